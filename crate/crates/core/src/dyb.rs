//! Dynamical Yang-Baxter candidates and their exhaustive checkers.

use serde::{Deserialize, Serialize};

use crate::dynset::{DynMorphism, DynSet};
use crate::embedding::BraidedQuiverMap;
use crate::error::{Error, Result};

/// A family `σ(λ): X × X → X × X` stored as two component tables.
///
/// `σ(λ)(x, y) = (L[λ][x][y], R[λ][x][y])`. No equation is assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DybCandidate {
    dynset: DynSet,
    l: Vec<usize>,
    r: Vec<usize>,
}

impl DybCandidate {
    pub fn new(dynset: DynSet, l: Vec<Vec<Vec<usize>>>, r: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let (n, m) = (dynset.n(), dynset.m());
        let flatten = |t: Vec<Vec<Vec<usize>>>, name: &'static str| -> Result<Vec<usize>> {
            if t.len() != n || t.iter().any(|p| p.len() != m || p.iter().any(|row| row.len() != m)) {
                return Err(Error::Shape {
                    table: name,
                    detail: format!("expected shape {n}×{m}×{m}"),
                });
            }
            let flat: Vec<usize> = t.into_iter().flatten().flatten().collect();
            if let Some(i) = flat.iter().position(|&v| v >= m) {
                return Err(Error::OutOfRange {
                    table: name,
                    row: i / (m * m),
                    col: i % (m * m),
                    value: flat[i],
                    bound: m,
                });
            }
            Ok(flat)
        };
        let l = flatten(l, "L")?;
        let r = flatten(r, "R")?;
        Ok(DybCandidate { dynset, l, r })
    }

    /// Builds from `f(λ, x, y) = (L, R)`.
    pub fn from_fn(dynset: &DynSet, f: impl Fn(usize, usize, usize) -> (usize, usize)) -> Result<Self> {
        let (n, m) = (dynset.n(), dynset.m());
        let mut l = Vec::with_capacity(n * m * m);
        let mut r = Vec::with_capacity(n * m * m);
        for lambda in 0..n {
            for x in 0..m {
                for y in 0..m {
                    let (a, b) = f(lambda, x, y);
                    if a >= m || b >= m {
                        return Err(Error::OutOfRange {
                            table: if a >= m { "L" } else { "R" },
                            row: lambda,
                            col: x * m + y,
                            value: a.max(b),
                            bound: m,
                        });
                    }
                    l.push(a);
                    r.push(b);
                }
            }
        }
        Ok(DybCandidate {
            dynset: dynset.clone(),
            l,
            r,
        })
    }

    pub fn identity(dynset: &DynSet) -> Self {
        Self::from_fn(dynset, |_, x, y| (x, y)).expect("in range")
    }

    /// Reads σ off a morphism `X ⊗ X → X ⊗ X`.
    pub fn from_morphism(dynset: &DynSet, f: &DynMorphism) -> Result<Self> {
        let xx = dynset.tensor(dynset)?;
        if f.source() != &xx || f.target() != &xx {
            return Err(Error::SizeMismatch("morphism is not an endomorphism of X⊗X".into()));
        }
        let m = dynset.m();
        Self::from_fn(dynset, |lambda, x, y| {
            let v = f.apply(lambda, x * m + y);
            (v / m, v % m)
        })
    }

    pub fn dynset(&self) -> &DynSet {
        &self.dynset
    }

    #[inline]
    pub fn get(&self, lambda: usize, x: usize, y: usize) -> (usize, usize) {
        let m = self.dynset.m();
        let i = (lambda * m + x) * m + y;
        (self.l[i], self.r[i])
    }

    pub fn l_table(&self) -> Vec<Vec<Vec<usize>>> {
        self.nested(&self.l)
    }

    pub fn r_table(&self) -> Vec<Vec<Vec<usize>>> {
        self.nested(&self.r)
    }

    fn nested(&self, flat: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let (n, m) = (self.dynset.n(), self.dynset.m());
        (0..n)
            .map(|l| {
                (0..m)
                    .map(|x| (0..m).map(|y| flat[(l * m + x) * m + y]).collect())
                    .collect()
            })
            .collect()
    }

    /// σ as a morphism `X ⊗ X → X ⊗ X`; fails exactly when invariance fails.
    pub fn as_morphism(&self) -> Result<DynMorphism> {
        let xx = self.dynset.tensor(&self.dynset)?;
        let m = self.dynset.m();
        let table = (0..self.dynset.n())
            .flat_map(|l| (0..m * m).map(move |p| (l, p)))
            .map(|(l, p)| {
                let (a, b) = self.get(l, p / m, p % m);
                a * m + b
            })
            .collect();
        DynMorphism::new(xx.clone(), xx, table).map_err(|e| match e {
            Error::InvalidMorphism { lambda, x } => Error::InvarianceViolation {
                lambda,
                x: x / m,
                y: x % m,
            },
            other => other,
        })
    }

    pub(crate) fn ensure_invariance(&self) -> Result<()> {
        let rep = check_invariance(self);
        match rep.witness.as_deref() {
            Some([lambda, x, y]) => Err(Error::InvarianceViolation {
                lambda: *lambda,
                x: *x,
                y: *y,
            }),
            _ => Ok(()),
        }
    }

    /// `σ(λ)` is a bijection of `X × X`.
    pub fn is_bijective_at(&self, lambda: usize) -> bool {
        let m = self.dynset.m();
        let mut hit = vec![false; m * m];
        for x in 0..m {
            for y in 0..m {
                let (a, b) = self.get(lambda, x, y);
                if std::mem::replace(&mut hit[a * m + b], true) {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of an exhaustive check. The witness is the lexicographically
/// first failing instance and is present exactly when the check fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub counts: u64,
    /// Name of the identity that was checked.
    #[serde(default)]
    pub identity: String,
}

impl CheckReport {
    pub fn pass(identity: &str, counts: u64) -> Self {
        CheckReport {
            passed: true,
            witness: None,
            counts,
            identity: identity.to_string(),
        }
    }

    pub fn fail(identity: &str, counts: u64, witness: Vec<usize>) -> Self {
        CheckReport {
            passed: false,
            witness: Some(witness),
            counts,
            identity: identity.to_string(),
        }
    }

    /// Runs `ok` on every instance in order; the first failure is the witness.
    pub(crate) fn scan<I>(identity: &str, instances: I, mut ok: impl FnMut(&[usize]) -> bool) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut counts = 0u64;
        let mut witness = None;
        for inst in instances {
            counts += 1;
            if witness.is_none() && !ok(&inst) {
                witness = Some(inst);
            }
        }
        match witness {
            None => CheckReport::pass(identity, counts),
            Some(w) => CheckReport::fail(identity, counts, w),
        }
    }

    /// Combined report; the first failing part wins.
    pub fn and(self, other: CheckReport) -> CheckReport {
        let counts = self.counts + other.counts;
        if !self.passed {
            CheckReport { counts, ..self }
        } else if !other.passed {
            CheckReport { counts, ..other }
        } else {
            CheckReport {
                identity: format!("{} + {}", self.identity, other.identity),
                counts,
                ..self
            }
        }
    }
}

pub const INVARIANCE: &str = "invariance condition";
pub const DYBE: &str = "set-theoretical dynamical Yang-Baxter equation";
pub const BRAID: &str = "braid relation on the quiver";
pub const INVARIANCE_CHECK: &str = "invariance condition (reversed convention)";
pub const DYBE_CHECK: &str = "dynamical Yang-Baxter equation (reversed convention)";

/// Lexicographic tuples over `0..sizes[i]`.
pub(crate) fn tuples(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = sizes.iter().product();
    (0..total).map(move |mut k| {
        let mut v = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            v[i] = k % sizes[i];
            k /= sizes[i];
        }
        v
    })
}

/// `(λ ⇀ L) ⇀ R = (λ ⇀ x) ⇀ y` for every `(λ, x, y)`.
pub fn check_invariance(s: &DybCandidate) -> CheckReport {
    let x = &s.dynset;
    CheckReport::scan(INVARIANCE, tuples(&[x.n(), x.m(), x.m()]), |t| {
        let (lambda, a, b) = (t[0], t[1], t[2]);
        let (l, r) = s.get(lambda, a, b);
        x.act(x.act(lambda, l), r) == x.act(x.act(lambda, a), b)
    })
}

/// Applies `σ(λ)₁₂ ∘ σ(λ⇀X⁽¹⁾)₂₃ ∘ σ(λ)₁₂` and the other side to `(x, y, z)`.
fn dybe_sides(s: &DybCandidate, lambda: usize, x: usize, y: usize, z: usize) -> ([usize; 3], [usize; 3]) {
    let d = &s.dynset;
    let (x1, y1) = s.get(lambda, x, y);
    let (y2, z2) = s.get(d.act(lambda, x1), y1, z);
    let (x3, y3) = s.get(lambda, x1, y2);
    let lhs = [x3, y3, z2];
    let (y1, z1) = s.get(d.act(lambda, x), y, z);
    let (x2, y2) = s.get(lambda, x, y1);
    let (y3, z3) = s.get(d.act(lambda, x2), y2, z1);
    (lhs, [x2, y3, z3])
}

/// The dynamical Yang-Baxter equation on every `(λ, x, y, z)`.
pub fn check_dybe(s: &DybCandidate) -> CheckReport {
    let d = &s.dynset;
    CheckReport::scan(DYBE, tuples(&[d.n(), d.m(), d.m(), d.m()]), |t| {
        let (a, b) = dybe_sides(s, t[0], t[1], t[2], t[3]);
        a == b
    })
}

/// Invariance followed by the DYBE: the definition of a dynamical Yang-Baxter map.
pub fn check_dyb_map(s: &DybCandidate) -> CheckReport {
    check_invariance(s).and(check_dybe(s))
}

/// `(σ̃×id)(id×σ̃)(σ̃×id) = (id×σ̃)(σ̃×id)(id×σ̃)` on all length-3 paths.
/// The witness is the arrow-index triple of the first failing path.
pub fn check_braid_on_quiver(b: &BraidedQuiverMap) -> CheckReport {
    let q = b.quiver();
    let paths: Vec<Vec<usize>> = (0..b.pair_count())
        .flat_map(|p| {
            let (a1, a2) = b.pair(p);
            (0..q.len())
                .filter(move |&a3| q.tgt(a2) == q.src(a3))
                .map(move |a3| vec![a1, a2, a3])
        })
        .collect();
    CheckReport::scan(BRAID, paths, |t| {
        let s12 = |p: [usize; 3]| {
            let (u, v) = b.apply(p[0], p[1]);
            [u, v, p[2]]
        };
        let s23 = |p: [usize; 3]| {
            let (u, v) = b.apply(p[1], p[2]);
            [p[0], u, v]
        };
        let p = [t[0], t[1], t[2]];
        s12(s23(s12(p))) == s23(s12(s23(p)))
    })
}

/// Subclass flags plus vertex type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub unitary: bool,
    pub idempotent: bool,
    pub invertible: bool,
    pub vertex_type: bool,
}

/// Classifies σ. Composition is the DSet composition, so `σ⋄σ` applies
/// `σ(λ)` twice with the same parameter.
pub fn classify(s: &DybCandidate) -> Result<Flags> {
    s.ensure_invariance()?;
    let d = &s.dynset;
    let (n, m) = (d.n(), d.m());
    let mut unitary = true;
    let mut idempotent = true;
    for lambda in 0..n {
        for x in 0..m {
            for y in 0..m {
                let (a, b) = s.get(lambda, x, y);
                let twice = s.get(lambda, a, b);
                unitary &= twice == (x, y);
                idempotent &= twice == (a, b);
            }
        }
    }
    let invertible = (0..n).all(|l| s.is_bijective_at(l));
    let vertex_type = (1..n).all(|l| (0..m).all(|x| (0..m).all(|y| s.get(l, x, y) == s.get(0, x, y))));
    Ok(Flags {
        unitary,
        idempotent,
        invertible,
        vertex_type,
    })
}

/// Searches DSet isomorphisms `f: X₁ → X₂` with `(f⊗f)⋄σ₁ = σ₂⋄(f⊗f)`.
/// Returns the first one in lexicographic table order.
pub fn are_equivalent(s1: &DybCandidate, s2: &DybCandidate) -> Result<Option<DynMorphism>> {
    s1.ensure_invariance()?;
    s2.ensure_invariance()?;
    let (x1, x2) = (&s1.dynset, &s2.dynset);
    x1.vertices().ensure_same(x2.vertices())?;
    let (n, m) = (x1.n(), x1.m());
    if m > 4 || n > 3 || x2.m() > 4 {
        return Err(Error::SizeLimit(format!(
            "equivalence search supports n ≤ 3 and m ≤ 4 (got n={n}, m={m})"
        )));
    }
    if x2.m() != m {
        return Ok(None);
    }
    // candidate values per cell respect the action
    let allowed: Vec<Vec<usize>> = (0..n * m)
        .map(|c| {
            let (l, x) = (c / m, c % m);
            (0..m).filter(|&v| x2.act(l, v) == x1.act(l, x)).collect()
        })
        .collect();
    let mut f = vec![0usize; n * m];
    let mut used = vec![false; n * m];
    let intertwines = |f: &[usize]| {
        (0..n).all(|l| {
            (0..m).all(|x| {
                (0..m).all(|y| {
                    let (a, b) = s1.get(l, x, y);
                    let lhs = (f[l * m + a], f[x1.act(l, a) * m + b]);
                    let rhs = s2.get(l, f[l * m + x], f[x1.act(l, x) * m + y]);
                    lhs == rhs
                })
            })
        })
    };
    fn rec(
        c: usize,
        allowed: &[Vec<usize>],
        m: usize,
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if c == f.len() {
            return ok(f);
        }
        let l = c / m;
        for &v in &allowed[c] {
            if used[l * m + v] {
                continue;
            }
            used[l * m + v] = true;
            f[c] = v;
            if rec(c + 1, allowed, m, f, used, ok) {
                return true;
            }
            used[l * m + v] = false;
        }
        false
    }
    if rec(0, &allowed, m, &mut f, &mut used, &intertwines) {
        Ok(Some(DynMorphism::new(x1.clone(), x2.clone(), f)?))
    } else {
        Ok(None)
    }
}

/// `σ̌(λ)(x, y) = (R(λ)(y, x), L(λ)(y, x))`. An involution.
pub fn to_check_convention(s: &DybCandidate) -> DybCandidate {
    DybCandidate::from_fn(&s.dynset, |lambda, x, y| {
        let (l, r) = s.get(lambda, y, x);
        (r, l)
    })
    .expect("in range")
}

/// Invariance in the reversed convention: `(λ⇀R)⇀L = (λ⇀y)⇀x`.
pub fn check_invariance_check_convention(s: &DybCandidate) -> CheckReport {
    let x = &s.dynset;
    CheckReport::scan(INVARIANCE_CHECK, tuples(&[x.n(), x.m(), x.m()]), |t| {
        let (lambda, a, b) = (t[0], t[1], t[2]);
        let (l, r) = s.get(lambda, a, b);
        x.act(x.act(lambda, r), l) == x.act(x.act(lambda, b), a)
    })
}

/// `σ̌(λ)₂₃ ∘ σ̌(λ⇀X⁽³⁾)₁₂ ∘ σ̌(λ)₂₃ = σ̌(λ⇀X⁽³⁾)₁₂ ∘ σ̌(λ)₂₃ ∘ σ̌(λ⇀X⁽³⁾)₁₂`
/// where `σ̌(λ⇀X⁽³⁾)₁₂(x, y, z) = (σ̌(λ⇀z)(x, y), z)`.
pub fn check_dybe_check_convention(s: &DybCandidate) -> CheckReport {
    let d = &s.dynset;
    let s23 = |lambda: usize, p: [usize; 3]| {
        let (u, v) = s.get(lambda, p[1], p[2]);
        [p[0], u, v]
    };
    let s12 = |lambda: usize, p: [usize; 3]| {
        let (u, v) = s.get(d.act(lambda, p[2]), p[0], p[1]);
        [u, v, p[2]]
    };
    CheckReport::scan(DYBE_CHECK, tuples(&[d.n(), d.m(), d.m(), d.m()]), |t| {
        let (lambda, p) = (t[0], [t[1], t[2], t[3]]);
        s23(lambda, s12(lambda, s23(lambda, p))) == s12(lambda, s23(lambda, s12(lambda, p)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ph::{sigma_from_ternary, TernaryOp};

    #[test]
    fn identity_passes_everything() {
        for x in [fixtures::f_g(), fixtures::k(2), fixtures::k(3)] {
            let id = DybCandidate::identity(&x);
            assert!(check_invariance(&id).passed);
            assert!(check_dybe(&id).passed);
            let f = classify(&id).unwrap();
            assert!(f.unitary && f.idempotent && f.invertible && f.vertex_type);
            assert_eq!(to_check_convention(&id), id);
        }
    }

    #[test]
    fn diagonal_breaks_invariance() {
        let k = fixtures::k(2);
        let s = DybCandidate::from_fn(&k, |_, x, _| (x, x)).unwrap();
        let rep = check_invariance(&s);
        assert!(!rep.passed);
        assert_eq!(rep.witness, Some(vec![0, 0, 1]));
        assert_eq!(rep.counts, 8);
        assert_eq!(
            classify(&s).unwrap_err(),
            Error::InvarianceViolation { lambda: 0, x: 0, y: 1 }
        );
        assert!(s.as_morphism().is_err());
    }

    #[test]
    fn b_plus_c_fails_dybe() {
        let t = TernaryOp::from_fn(2, |_, b, c| (b + c) % 2);
        let s = sigma_from_ternary(&fixtures::k(2), &t).unwrap();
        assert!(check_invariance(&s).passed);
        assert!(!check_dybe(&s).passed);
    }

    #[test]
    fn group_ternary_on_z3_passes() {
        let s = sigma_from_ternary(&fixtures::k(3), &fixtures::group_ternary(3)).unwrap();
        let rep = check_dybe(&s);
        assert!(rep.passed);
        assert_eq!(rep.counts, 81);
    }

    #[test]
    fn classification_examples() {
        let grp = sigma_from_ternary(&fixtures::k(2), &fixtures::group_ternary(2)).unwrap();
        let f = classify(&grp).unwrap();
        assert_eq!(
            f,
            Flags {
                unitary: true,
                idempotent: false,
                invertible: true,
                vertex_type: false
            }
        );
        let third = sigma_from_ternary(&fixtures::k(2), &TernaryOp::from_fn(2, |_, _, c| c)).unwrap();
        let f = classify(&third).unwrap();
        assert!(f.idempotent && f.vertex_type && !f.invertible);
    }

    #[test]
    fn equivalence_examples() {
        let k = fixtures::k(2);
        let grp = sigma_from_ternary(&k, &fixtures::group_ternary(2)).unwrap();
        let w = are_equivalent(&grp, &grp).unwrap().unwrap();
        assert_eq!(w, DynMorphism::identity(&k));
        let on_fg = sigma_from_ternary(&fixtures::f_g(), &fixtures::group_ternary(2)).unwrap();
        let w = are_equivalent(&on_fg, &grp).unwrap().unwrap();
        assert_eq!(w, crate::dynset::terminal_morphism(&fixtures::f_g()));
        let b = sigma_from_ternary(&k, &TernaryOp::from_fn(2, |_, b, _| b)).unwrap();
        let c = sigma_from_ternary(&k, &TernaryOp::from_fn(2, |_, _, c| c)).unwrap();
        assert!(are_equivalent(&b, &c).unwrap().is_none());
    }

    #[test]
    fn equivalence_size_limit() {
        let k = fixtures::k(4);
        let id = DybCandidate::identity(&k);
        assert_eq!(are_equivalent(&id, &id).unwrap_err().code(), "SizeLimit");
    }

    #[test]
    fn check_convention_round_trip() {
        let grp = sigma_from_ternary(&fixtures::f_g(), &fixtures::group_ternary(2)).unwrap();
        let c = to_check_convention(&grp);
        assert_eq!(to_check_convention(&c), grp);
        assert!(check_invariance_check_convention(&c).passed);
        assert!(check_dybe_check_convention(&c).passed);
    }

    #[test]
    fn tuples_are_lexicographic() {
        let v: Vec<_> = tuples(&[2, 3]).collect();
        assert_eq!(v[0], vec![0, 0]);
        assert_eq!(v[1], vec![0, 1]);
        assert_eq!(v[3], vec![1, 0]);
        assert_eq!(v.len(), 6);
    }
}
