//! Composite solutions on `X = X₀ × Λ`.
//!
//! A Yang-Baxter map `σ₀(i, j) = (i ⊲ j, i ⊳ j)` on colors, a ternary
//! operation on Λ and one left quasigroup `*ᵢ` per color combine into a
//! dynamical Yang-Baxter map with `λ ⇀ (i, μ) = λ *ᵢ μ`. Carrier index of
//! `(i, μ)` is `i·n + μ` (color-major).

use serde::{Deserialize, Serialize};

use crate::dyb::{tuples, CheckReport, DybCandidate};
use crate::dynset::{DynMorphism, DynSet};
use crate::error::{Error, Result};
use crate::ph::{ternary_classify, LeftQuasigroup, TernaryOp};

/// One left quasigroup on Λ per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasigroupFamily {
    ops: Vec<LeftQuasigroup>,
}

impl QuasigroupFamily {
    pub fn new(ops: Vec<LeftQuasigroup>) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::SizeMismatch("a family needs at least one color".into()));
        };
        let n = first.n();
        if let Some(i) = ops.iter().position(|q| q.n() != n) {
            return Err(Error::SizeMismatch(format!(
                "color {i} is over {} vertices, color 0 over {n}",
                ops[i].n()
            )));
        }
        Ok(QuasigroupFamily { ops })
    }

    pub fn colors(&self) -> usize {
        self.ops.len()
    }

    pub fn n(&self) -> usize {
        self.ops[0].n()
    }

    pub fn op(&self, i: usize) -> &LeftQuasigroup {
        &self.ops[i]
    }

    pub fn ops(&self) -> &[LeftQuasigroup] {
        &self.ops
    }
}

/// A candidate `σ₀: X₀ × X₀ → X₀ × X₀` on `k` colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YbCandidate {
    k: usize,
    l: Vec<usize>,
    r: Vec<usize>,
}

impl YbCandidate {
    pub fn new(k: usize, l: Vec<Vec<usize>>, r: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let flat = |t: Vec<Vec<usize>>, name: &'static str| -> Result<Vec<usize>> {
            if t.len() != k || t.iter().any(|row| row.len() != k) {
                return Err(Error::Shape {
                    table: name,
                    detail: format!("expected {k}×{k}"),
                });
            }
            let f: Vec<usize> = t.concat();
            if let Some(p) = f.iter().position(|&v| v >= k) {
                return Err(Error::OutOfRange {
                    table: name,
                    row: p / k,
                    col: p % k,
                    value: f[p],
                    bound: k,
                });
            }
            Ok(f)
        };
        Ok(YbCandidate {
            k,
            l: flat(l, "L")?,
            r: flat(r, "R")?,
        })
    }

    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = tuples(&[k, k]).map(|t| f(t[0], t[1])).collect();
        let l = pairs.iter().map(|p| p.0).collect::<Vec<_>>();
        let r = pairs.iter().map(|p| p.1).collect::<Vec<_>>();
        Self::new(
            k,
            l.chunks(k.max(1)).map(|c| c.to_vec()).collect(),
            r.chunks(k.max(1)).map(|c| c.to_vec()).collect(),
        )
    }

    /// Builds from `value[i·k + j] = L·k + R`, the encoding used by search.
    pub fn from_codes(k: usize, codes: &[usize]) -> Self {
        YbCandidate {
            k,
            l: codes.iter().map(|c| c / k).collect(),
            r: codes.iter().map(|c| c % k).collect(),
        }
    }

    pub fn codes(&self) -> Vec<usize> {
        self.l.iter().zip(&self.r).map(|(a, b)| a * self.k + b).collect()
    }

    pub fn identity(k: usize) -> Self {
        Self::from_fn(k, |i, j| (i, j)).expect("in range")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(i ⊲ j, i ⊳ j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> (usize, usize) {
        let p = i * self.k + j;
        (self.l[p], self.r[p])
    }

    pub fn l_rows(&self) -> Vec<Vec<usize>> {
        self.l.chunks(self.k).map(|c| c.to_vec()).collect()
    }

    pub fn r_rows(&self) -> Vec<Vec<usize>> {
        self.r.chunks(self.k).map(|c| c.to_vec()).collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut codes = self.codes();
        codes.sort_unstable();
        codes.dedup();
        codes.len() == self.k * self.k
    }

    pub fn is_unitary(&self) -> bool {
        tuples(&[self.k, self.k]).all(|t| {
            let (a, b) = self.get(t[0], t[1]);
            self.get(a, b) == (t[0], t[1])
        })
    }

    pub fn is_idempotent(&self) -> bool {
        tuples(&[self.k, self.k]).all(|t| {
            let (a, b) = self.get(t[0], t[1]);
            self.get(a, b) == (a, b)
        })
    }

    /// `σ^π = (π×π) σ (π⁻¹×π⁻¹)`.
    pub fn relabel(&self, perm: &[usize]) -> YbCandidate {
        let mut inv = vec![0; self.k];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        YbCandidate::from_fn(self.k, |i, j| {
            let (a, b) = self.get(inv[i], inv[j]);
            (perm[a], perm[b])
        })
        .expect("in range")
    }
}

pub const YBE: &str = "Yang-Baxter equation (braid form)";

/// `(σ×id)(id×σ)(σ×id) = (id×σ)(σ×id)(id×σ)` on every `(i, j, l)`.
pub fn check_ybe(s: &YbCandidate) -> CheckReport {
    let k = s.k;
    let s12 = |p: [usize; 3]| {
        let (a, b) = s.get(p[0], p[1]);
        [a, b, p[2]]
    };
    let s23 = |p: [usize; 3]| {
        let (a, b) = s.get(p[1], p[2]);
        [p[0], a, b]
    };
    CheckReport::scan(YBE, tuples(&[k, k, k]), |t| {
        let p = [t[0], t[1], t[2]];
        s12(s23(s12(p))) == s23(s12(s23(p)))
    })
}

/// `X₀ × Λ` with `λ ⇀ (i, μ) = λ *ᵢ μ`.
pub fn composite_dynset(fam: &QuasigroupFamily) -> DynSet {
    let n = fam.n();
    DynSet::from_fn(n, fam.colors() * n, |l, c| fam.op(c / n).mul(l, c % n)).expect("in range")
}

/// The colored terminal object `K`: `λ ⇀ (i, μ) = μ`.
pub fn colored_terminal(colors: usize, n: usize) -> DynSet {
    DynSet::from_fn(n, colors * n, |_, c| c % n).expect("in range")
}

/// The isomorphism `ψ: X → K`, `ψ(λ)(i, λ') = (i, λ *ᵢ λ')`.
pub fn colored_psi(fam: &QuasigroupFamily) -> DynMorphism {
    let n = fam.n();
    DynMorphism::from_fn(
        composite_dynset(fam),
        colored_terminal(fam.colors(), n),
        |l, c| (c / n) * n + fam.op(c / n).mul(l, c % n),
    )
    .expect("ψ respects the action")
}

/// The composite on `K`: `σ̃(λ -i-> μ -j-> ν) = λ -(i⊲j)-> ⟨λ,μ,ν⟩ -(i⊳j)-> ν`.
pub fn colored_sigma_on_terminal(s0: &YbCandidate, t: &TernaryOp) -> Result<DybCandidate> {
    let n = t.n();
    let k = colored_terminal(s0.k(), n);
    DybCandidate::from_fn(&k, |l, a, b| {
        let (i, mu) = (a / n, a % n);
        let (j, nu) = (b / n, b % n);
        let (i2, j2) = s0.get(i, j);
        (i2 * n + t.get(l, mu, nu), j2 * n + nu)
    })
}

/// The composite dynamical set and solution candidate.
pub fn build_composite(s0: &YbCandidate, t: &TernaryOp, fam: &QuasigroupFamily) -> Result<(DynSet, DybCandidate)> {
    if fam.colors() != s0.k() {
        return Err(Error::SizeMismatch(format!(
            "{} colors in the family, σ₀ on {} colors",
            fam.colors(),
            s0.k()
        )));
    }
    if fam.n() != t.n() {
        return Err(Error::SizeMismatch(format!(
            "quasigroups over {} vertices, ternary operation over {}",
            fam.n(),
            t.n()
        )));
    }
    let n = t.n();
    let x = composite_dynset(fam);
    let sigma = DybCandidate::from_fn(&x, |l, a, b| {
        let (i, xx) = (a / n, a % n);
        let (j, yy) = (b / n, b % n);
        let mu = fam.op(i).mul(l, xx);
        let nu = fam.op(j).mul(mu, yy);
        let mid = t.get(l, mu, nu);
        let (i2, j2) = s0.get(i, j);
        (i2 * n + fam.op(i2).ldiv(l, mid), j2 * n + fam.op(j2).ldiv(mid, nu))
    })?;
    Ok((x, sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeFlags {
    pub unitary: bool,
    pub idempotent: bool,
    pub invertible: bool,
}

/// Each flag is the conjunction of the color-level and the Λ-level condition.
pub fn composite_classify(s0: &YbCandidate, t: &TernaryOp) -> CompositeFlags {
    let tf = ternary_classify(t);
    CompositeFlags {
        unitary: s0.is_unitary() && tf.unitary,
        idempotent: s0.is_idempotent() && tf.idempotent,
        invertible: s0.is_bijective() && tf.invertible,
    }
}
