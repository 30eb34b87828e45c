use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{coeff, ratio_strings, Q};
use crate::dynset::DynSet;
use crate::error::{Error, Result};

/// A word in the `L⁺` generators; `(x, y)` stands for `L⁺_xy`.
pub type Word = Vec<(usize, usize)>;

/// One factor of a raw product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Coeff(Vec<Q>),
    Gen(usize, usize),
}

/// `Σ c_w · w` with every coefficient on the left, like words merged and
/// zero terms dropped. Words are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "NormalRepr", try_from = "NormalRepr")]
pub struct NormalExpr {
    n: usize,
    terms: BTreeMap<Word, Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
struct NormalRepr {
    n: usize,
    terms: Vec<NormalTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct NormalTermRepr {
    #[serde(with = "ratio_strings")]
    coeff: Vec<Q>,
    word: Word,
}

impl From<NormalExpr> for NormalRepr {
    fn from(e: NormalExpr) -> Self {
        NormalRepr {
            n: e.n,
            terms: e
                .terms
                .into_iter()
                .map(|(word, coeff)| NormalTermRepr { coeff, word })
                .collect(),
        }
    }
}

impl TryFrom<NormalRepr> for NormalExpr {
    type Error = Error;
    fn try_from(r: NormalRepr) -> Result<Self> {
        let mut e = NormalExpr::zero(r.n);
        for t in r.terms {
            if t.coeff.len() != r.n * r.n {
                return Err(Error::Shape {
                    table: "coefficient",
                    detail: format!("expected {} entries, found {}", r.n * r.n, t.coeff.len()),
                });
            }
            e.add_term(t.word, &t.coeff);
        }
        Ok(e)
    }
}

impl NormalExpr {
    pub fn zero(n: usize) -> Self {
        NormalExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 = Σ_λ δ_λ` with the empty word.
    pub fn one(n: usize) -> Self {
        Self::monomial(n, coeff::ones(n), Vec::new())
    }

    pub fn monomial(n: usize, c: Vec<Q>, word: Word) -> Self {
        let mut e = Self::zero(n);
        e.add_term(word, &c);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Vec<Q>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[(usize, usize)]) -> Option<&Vec<Q>> {
        self.terms.get(word)
    }

    pub(crate) fn add_term(&mut self, word: Word, c: &[Q]) {
        let slot = self
            .terms
            .entry(word)
            .or_insert_with(|| vec![Q::zero(); c.len()]);
        for (s, v) in slot.iter_mut().zip(c) {
            *s += v;
        }
        self.terms.retain(|_, v| !coeff::is_zero(v));
    }

    pub fn add(&self, other: &NormalExpr) -> NormalExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NormalExpr) -> NormalExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            let neg: Vec<Q> = c.iter().map(|v| -v).collect();
            out.add_term(w.clone(), &neg);
        }
        out
    }

    /// `c · self`.
    pub fn scale_left(&self, c: &[Q]) -> NormalExpr {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &coeff::mul(c, v));
        }
        out
    }

    /// `self · other`, pushing the coefficients of `other` left through
    /// the words of `self`.
    pub fn mul(&self, x: &DynSet, other: &NormalExpr) -> NormalExpr {
        let mut out = Self::zero(self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let pushed = push_through(x, w1, c2);
                let word: Word = w1.iter().chain(w2).copied().collect();
                out.add_term(word, &coeff::mul(c1, &pushed));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let c = coeff::render(self.n, c);
                if w.is_empty() {
                    c
                } else {
                    let word: String = w.iter().map(|(x, y)| format!("L+[{x},{y}]")).collect();
                    format!("{c}·{word}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `c'` with `w · c = c' · w`.
pub(crate) fn push_through(x: &DynSet, w: &[(usize, usize)], c: &[Q]) -> Vec<Q> {
    w.iter()
        .rev()
        .fold(c.to_vec(), |acc, &(a, b)| coeff::pass_left(x, a, b, &acc))
}

/// Normal form of a sum of raw products, rewriting leftmost redex first.
pub fn normalize(x: &DynSet, raw: &[Vec<Factor>]) -> NormalExpr {
    normalize_with(x, raw, |_| 0)
}

/// Normal form using `pick(k)` to choose which of the `k` available redexes
/// to rewrite next. A redex is an adjacent `L⁺ c` (commute `c` left) or `c c'`
/// (multiply). The result does not depend on the choices.
pub fn normalize_with(x: &DynSet, raw: &[Vec<Factor>], mut pick: impl FnMut(usize) -> usize) -> NormalExpr {
    let n = x.n();
    let mut out = NormalExpr::zero(n);
    for product in raw {
        let mut f = product.clone();
        loop {
            let redexes: Vec<usize> = (0..f.len().saturating_sub(1))
                .filter(|&i| matches!(f[i + 1], Factor::Coeff(_)))
                .collect();
            if redexes.is_empty() {
                break;
            }
            let i = redexes[pick(redexes.len()) % redexes.len()];
            let right = match f.remove(i + 1) {
                Factor::Coeff(c) => c,
                Factor::Gen(..) => unreachable!("redex"),
            };
            match &f[i] {
                Factor::Coeff(left) => f[i] = Factor::Coeff(coeff::mul(left, &right)),
                &Factor::Gen(a, b) => f.insert(i, Factor::Coeff(coeff::pass_left(x, a, b, &right))),
            }
        }
        let (c, rest) = match f.first() {
            Some(Factor::Coeff(c)) => (c.clone(), &f[1..]),
            _ => (coeff::ones(n), &f[..]),
        };
        let word = rest
            .iter()
            .map(|g| match g {
                &Factor::Gen(a, b) => (a, b),
                Factor::Coeff(_) => unreachable!("normal"),
            })
            .collect();
        out.add_term(word, &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::One;

    #[test]
    fn coefficient_passes_left() {
        // 0 ⇀ 1 = 1 on ℤ/2, so L⁺₁₀·δ₁ = δ₀·L⁺₁₀
        let x = fixtures::f_g();
        let a = normalize(&x, &[vec![Factor::Gen(1, 0), Factor::Coeff(coeff::delta(2, 1))]]);
        let b = normalize(&x, &[vec![Factor::Coeff(coeff::delta(2, 0)), Factor::Gen(1, 0)]]);
        assert_eq!(a, b);
        assert_eq!(a.coefficient(&[(1, 0)]), Some(&coeff::delta(2, 0)));
    }

    #[test]
    fn normal_input_is_unchanged_and_idempotent() {
        let x = fixtures::f_g();
        let raw = vec![vec![Factor::Coeff(coeff::delta_bar(2, 1)), Factor::Gen(0, 1), Factor::Gen(1, 1)]];
        let e = normalize(&x, &raw);
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(&[(0, 1), (1, 1)]), Some(&coeff::delta_bar(2, 1)));
        let again: Vec<Vec<Factor>> = e
            .terms()
            .map(|(w, c)| {
                std::iter::once(Factor::Coeff(c.clone()))
                    .chain(w.iter().map(|&(a, b)| Factor::Gen(a, b)))
                    .collect()
            })
            .collect();
        assert_eq!(normalize(&x, &again), e);
    }

    #[test]
    fn partition_of_unity() {
        let x = fixtures::f_g();
        let raw: Vec<Vec<Factor>> = (0..2)
            .map(|l| vec![Factor::Coeff(coeff::delta(2, l)), Factor::Gen(1, 1)])
            .collect();
        assert_eq!(
            normalize(&x, &raw),
            normalize(&x, &[vec![Factor::Gen(1, 1)]])
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = fixtures::f_g();
        let e = NormalExpr::monomial(2, coeff::ones(2), vec![(0, 0)]);
        assert!(e.sub(&e).is_zero());
        assert_eq!(e.sub(&e).render(), "0");
        assert!(NormalExpr::one(2).mul(&x, &e) == e);
        assert!(e.mul(&x, &NormalExpr::one(2)) == e);
    }

    #[test]
    fn mul_matches_normalize() {
        let x = fixtures::f_g();
        let a = NormalExpr::monomial(2, coeff::delta(2, 1), vec![(0, 1)]);
        let b = NormalExpr::monomial(2, coeff::delta_bar(2, 0), vec![(1, 1)]);
        let raw = vec![vec![
            Factor::Coeff(coeff::delta(2, 1)),
            Factor::Gen(0, 1),
            Factor::Coeff(coeff::delta_bar(2, 0)),
            Factor::Gen(1, 1),
        ]];
        assert_eq!(a.mul(&x, &b), normalize(&x, &raw));
    }

    #[test]
    fn json_round_trip() {
        let e = NormalExpr::monomial(2, coeff::delta(2, 1), vec![(0, 1)])
            .add(&NormalExpr::monomial(2, vec![Q::new(1, 2); 4], vec![]));
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"1/2\""));
        let back: NormalExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(e.coefficient(&[]).unwrap()[0] == Q::one() / 2);
    }
}
