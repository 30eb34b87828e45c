use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::face::{face_weights, star_triangular_check, FaceModel};
use super::normal::{NormalExpr, Word};
use super::{check_cap, coeff, Path, Q};
use crate::dyb::DybCandidate;
use crate::dynset::DynSet;
use crate::error::{Error, Result};

/// `φ(e[p;q]) = δ_{λ₁} δ̄_{μ₁} L⁺_{x₁y₁} ⋯ L⁺_{x_m y_m}`.
pub fn phi_image(x: &DynSet, p: &Path, q: &Path) -> Result<NormalExpr> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    p.validate(x)?;
    q.validate(x)?;
    let n = x.n();
    let c = coeff::mul(&coeff::delta(n, p.start), &coeff::delta_bar(n, q.start));
    let word = p.colors.iter().copied().zip(q.colors.iter().copied()).collect();
    Ok(NormalExpr::monomial(n, c, word))
}

/// `t(b ⇀ 1)` where `L⁺_ab ⇀ f = δ_ab f(· ⇀ a)` and `ξ ξ̄'` acts by `ξ ξ'`.
pub fn counit(x: &DynSet, e: &NormalExpr) -> Q {
    let n = x.n();
    e.terms()
        .map(|(w, c)| {
            let f = w.iter().rev().fold(vec![Q::one(); n], |f, &(a, b)| {
                if a != b {
                    return vec![Q::zero(); n];
                }
                (0..n).map(|l| f[x.act(l, a)]).collect()
            });
            (0..n).map(|l| c[l * n + l] * f[l]).sum::<Q>()
        })
        .sum()
}

/// Elements of `B ⊗ B` in normal form: coefficients over `Λ⁴` at index
/// `((λ₁·n + μ₁)·n + λ₂)·n + μ₂`, the first two coordinates belonging to the
/// left factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorExpr {
    n: usize,
    terms: BTreeMap<(Word, Word), Vec<Q>>,
}

impl TensorExpr {
    pub fn zero(n: usize) -> Self {
        TensorExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (Word, Word), c: Vec<Q>) {
        if coeff::is_zero(&c) {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(|| vec![Q::zero(); c.len()]);
        for (s, v) in slot.iter_mut().zip(&c) {
            *s += v;
        }
        self.terms.retain(|_, v| !coeff::is_zero(v));
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &NormalExpr, b: &NormalExpr) -> Self {
        let n = a.n();
        let mut out = Self::zero(n);
        for (w1, c1) in a.terms() {
            for (w2, c2) in b.terms() {
                let c = (0..n.pow(4)).map(|i| c1[i / (n * n)] * c2[i % (n * n)]).collect();
                out.add_term((w1.clone(), w2.clone()), c);
            }
        }
        out
    }

    pub fn add(&self, other: &TensorExpr) -> TensorExpr {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Factorwise product.
    pub fn mul(&self, x: &DynSet, other: &TensorExpr) -> TensorExpr {
        let n = self.n;
        let nn = n * n;
        let mut out = Self::zero(n);
        for ((w1, w2), c) in &self.terms {
            for ((v1, v2), d) in &other.terms {
                // push d through w1 on the left coordinates and w2 on the right
                let mut pushed = vec![Q::zero(); nn * nn];
                let lmap = index_map(x, w1);
                let rmap = index_map(x, w2);
                for (i, slot) in pushed.iter_mut().enumerate() {
                    *slot = d[lmap[i / nn] * nn + rmap[i % nn]];
                }
                let c = c.iter().zip(&pushed).map(|(a, b)| a * b).collect();
                let key = (
                    w1.iter().chain(v1).copied().collect(),
                    w2.iter().chain(v2).copied().collect(),
                );
                out.add_term(key, c);
            }
        }
        out
    }
}

/// Where `w · c = c' · w` reads its value: `c'[i] = c[map[i]]` over `Λ × Λ`.
fn index_map(x: &DynSet, w: &[(usize, usize)]) -> Vec<usize> {
    let n = x.n();
    (0..n * n)
        .map(|i| {
            let (mut l, mut m) = (i / n, i % n);
            for &(a, b) in w {
                l = x.act(l, a);
                m = x.act(m, b);
            }
            l * n + m
        })
        .collect()
}

fn delta_coproduct(n: usize, lambda: usize) -> TensorExpr {
    // Δ(δ_λ) = Σ_ν δ_λ δ̄_ν ⊗ δ_ν
    (0..n).fold(TensorExpr::zero(n), |acc, nu| {
        let left = NormalExpr::monomial(n, coeff::mul(&coeff::delta(n, lambda), &coeff::delta_bar(n, nu)), vec![]);
        let right = NormalExpr::monomial(n, coeff::delta(n, nu), vec![]);
        acc.add(&TensorExpr::tensor(&left, &right))
    })
}

fn delta_bar_coproduct(n: usize, mu: usize) -> TensorExpr {
    // Δ(δ̄_μ) = Σ_ν δ̄_ν ⊗ δ̄_μ δ_ν
    (0..n).fold(TensorExpr::zero(n), |acc, nu| {
        let left = NormalExpr::monomial(n, coeff::delta_bar(n, nu), vec![]);
        let right = NormalExpr::monomial(n, coeff::mul(&coeff::delta_bar(n, mu), &coeff::delta(n, nu)), vec![]);
        acc.add(&TensorExpr::tensor(&left, &right))
    })
}

fn lplus_coproduct(x: &DynSet, a: usize, b: usize) -> TensorExpr {
    // Δ(L⁺_ab) = Σ_{c,ν} δ̄_ν L⁺_ac ⊗ δ_ν L⁺_cb
    let n = x.n();
    let mut acc = TensorExpr::zero(n);
    for c in 0..x.m() {
        for nu in 0..n {
            let left = NormalExpr::monomial(n, coeff::delta_bar(n, nu), vec![(a, c)]);
            let right = NormalExpr::monomial(n, coeff::delta(n, nu), vec![(c, b)]);
            acc = acc.add(&TensorExpr::tensor(&left, &right));
        }
    }
    acc
}

/// One of the five checks; the witness names the first failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub counts: u64,
    pub witness: Option<String>,
}

impl SubCheck {
    fn run<I: IntoIterator<Item = String>>(name: &str, instances: I, mut ok: impl FnMut(&str) -> bool) -> Self {
        let mut counts = 0;
        let mut witness = None;
        for inst in instances {
            counts += 1;
            if witness.is_none() && !ok(&inst) {
                witness = Some(inst);
            }
        }
        SubCheck {
            name: name.into(),
            passed: witness.is_none(),
            counts,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub path_cap: usize,
    pub passed: bool,
    pub checks: Vec<SubCheck>,
    /// Largest number of terms on either side of a face relation.
    pub max_face_terms: usize,
}

fn e_name(x: &DynSet, p: &Path, q: &Path) -> String {
    format!("e[{};{}]", p.render(x), q.render(x))
}

/// Runs the five checks and reports each, failing or not.
pub fn phi_homomorphism_report(s: &DybCandidate, m: usize) -> Result<PhiReport> {
    check_cap(m)?;
    let st = star_triangular_check(s);
    if !st.passed() {
        return Err(Error::PreconditionFailed(format!(
            "star-triangular check failed: shibukawa_condition={}, invertible_w={}, braid_w={}",
            st.shibukawa_condition, st.invertible_w, st.braid_w
        )));
    }
    let x = s.dynset();
    let n = x.n();
    let phi = |p: &Path, q: &Path| phi_image(x, p, q).expect("valid paths");
    let paths: Vec<Vec<Path>> = (0..=m).map(|k| Path::all(x, k)).collect();

    // unit: Σ φ(e[λ;μ]) = 1
    let unit = SubCheck::run("unit", ["sum of length-0 generators".to_string()], |_| {
        let total = paths[0]
            .iter()
            .flat_map(|p| paths[0].iter().map(move |q| (p, q)))
            .fold(NormalExpr::zero(n), |acc, (p, q)| acc.add(&phi(p, q)));
        total == NormalExpr::one(n)
    });

    // products of generators whose lengths add up to at most m
    let mut product_instances = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            for p in &paths[a] {
                for q in &paths[a] {
                    for p2 in &paths[b] {
                        for q2 in &paths[b] {
                            product_instances.push((p, q, p2, q2));
                        }
                    }
                }
            }
        }
    }
    let mut idx = 0;
    let multiplicativity = SubCheck::run(
        "multiplicativity",
        product_instances
            .iter()
            .map(|(p, q, p2, q2)| format!("{}·{}", e_name(x, p, q), e_name(x, p2, q2))),
        |_| {
            let (p, q, p2, q2) = product_instances[idx];
            idx += 1;
            let lhs = phi(p, q).mul(x, &phi(p2, q2));
            let rhs = match (p.concat(p2, x), q.concat(q2, x)) {
                (Some(pp), Some(qq)) => phi(&pp, &qq),
                _ => NormalExpr::zero(n),
            };
            lhs == rhs
        },
    );

    let face = face_weights(s)?;
    let mut max_face_terms = 0;
    let face_check = face_relation_check(x, &face, &mut max_face_terms);

    // Δφ = (φ⊗φ)Δ on every generator up to length m
    let mut gens = Vec::new();
    for level in &paths {
        for p in level {
            for q in level {
                gens.push((p, q));
            }
        }
    }
    let mut idx = 0;
    let comultiplication = SubCheck::run(
        "comultiplication",
        gens.iter().map(|(p, q)| e_name(x, p, q)),
        |_| {
            let (p, q) = gens[idx];
            idx += 1;
            let mut lhs = delta_coproduct(n, p.start).mul(x, &delta_bar_coproduct(n, q.start));
            for (&a, &b) in p.colors.iter().zip(&q.colors) {
                lhs = lhs.mul(x, &lplus_coproduct(x, a, b));
            }
            let rhs = paths[p.len()].iter().fold(TensorExpr::zero(n), |acc, t| {
                acc.add(&TensorExpr::tensor(&phi(p, t), &phi(t, q)))
            });
            lhs == rhs
        },
    );

    let mut idx = 0;
    let counit_check = SubCheck::run("counit", gens.iter().map(|(p, q)| e_name(x, p, q)), |_| {
        let (p, q) = gens[idx];
        idx += 1;
        let want = if p == q { Q::one() } else { Q::zero() };
        counit(x, &phi(p, q)) == want
    });

    let checks = vec![unit, multiplicativity, face_check, comultiplication, counit_check];
    Ok(PhiReport {
        path_cap: m,
        passed: checks.iter().all(|c| c.passed),
        checks,
        max_face_terms,
    })
}

/// Each face relation instance, mapped by `φ`, equals `δ_μ δ̄_ν` times the
/// matching side of the RLL relation, side by side.
fn face_relation_check(x: &DynSet, face: &FaceModel, max_terms: &mut usize) -> SubCheck {
    let n = x.n();
    let mx = x.m();
    let pairs = face.pairs();
    let arrow = |i: usize| (i / mx, i % mx);
    let phi1 = |p: usize, q: usize| {
        let (pl, px) = arrow(p);
        let (ql, qx) = arrow(q);
        phi_image(x, &Path::new(pl, vec![px]), &Path::new(ql, vec![qx])).expect("arrows")
    };
    // σ^{pq}_{rs}(λ) = 1 iff σ(λ)(p, q) = (r, s), read from the face weights
    let sigma_coeff = |p: usize, q: usize, r: usize, s: usize, on_bar: bool| {
        coeff::from_fn(n, |l, mu| {
            let lam = if on_bar { mu } else { l };
            let a = lam * mx + p;
            let b = x.act(lam, p) * mx + q;
            let c = lam * mx + r;
            let d = x.act(lam, r) * mx + s;
            face.weight(a, b, c, d).is_one()
        })
    };
    let mut instances = Vec::new();
    for &(a, b) in pairs {
        for &(c, d) in pairs {
            instances.push((a, b, c, d));
        }
    }
    let label = |i: usize| face.quiver().arrows()[i].label.clone();
    let mut idx = 0;
    SubCheck::run(
        "face relation",
        instances
            .iter()
            .map(|&(a, b, c, d)| format!("[{} {}; {} {}]", label(a), label(b), label(c), label(d))),
        |_| {
            let (a, b, c, d) = instances[idx];
            idx += 1;
            let (mu, ax) = arrow(a);
            let (nu, cx) = arrow(c);
            let (bx, dx) = (b % mx, d % mx);
            let frame = coeff::mul(&coeff::delta(n, mu), &coeff::delta_bar(n, nu));
            let mut lhs = NormalExpr::zero(n);
            let mut rhs = NormalExpr::zero(n);
            for &(p, q) in pairs {
                let w = face.weight(p, q, a, b);
                if !w.is_zero() {
                    lhs = lhs.add(&phi1(p, c).mul(x, &phi1(q, d)).scale_left(&vec![w; n * n]));
                }
                let w = face.weight(c, d, p, q);
                if !w.is_zero() {
                    rhs = rhs.add(&phi1(a, p).mul(x, &phi1(b, q)).scale_left(&vec![w; n * n]));
                }
            }
            let mut rll_l = NormalExpr::zero(n);
            let mut rll_r = NormalExpr::zero(n);
            for u in 0..mx {
                for v in 0..mx {
                    rll_l = rll_l.add(&NormalExpr::monomial(n, sigma_coeff(u, v, ax, bx, false), vec![(u, cx), (v, dx)]));
                    rll_r = rll_r.add(&NormalExpr::monomial(n, sigma_coeff(cx, dx, u, v, true), vec![(ax, u), (bx, v)]));
                }
            }
            *max_terms = (*max_terms).max(lhs.len()).max(rhs.len());
            lhs == rll_l.scale_left(&frame) && rhs == rll_r.scale_left(&frame)
        },
    )
}

/// The report, or `CheckFailed` naming the first failing instance.
pub fn phi_homomorphism_check(s: &DybCandidate, m: usize) -> Result<PhiReport> {
    let report = phi_homomorphism_report(s, m)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::CheckFailed(format!(
            "{} fails at {}",
            bad.name,
            bad.witness.as_deref().unwrap_or("?")
        )));
    }
    Ok(report)
}
