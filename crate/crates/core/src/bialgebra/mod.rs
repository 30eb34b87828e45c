//! Face models, the two weak bialgebra presentations and the comparison map.
//!
//! Coefficients live in `E = F ⊗ F` with `F` the functions on `Λ`, stored
//! densely over `Λ × Λ` at index `λ·n + μ`: `δ_λ` is the indicator of the
//! first coordinate and `δ̄_μ` of the second.

mod face;
mod normal;
mod phi;
mod presentation;

pub use face::{face_weights, star_triangular_check, FaceModel, StarTriangularReport};
pub use normal::{normalize, normalize_with, Factor, NormalExpr};
pub use phi::{counit, phi_homomorphism_check, phi_homomorphism_report, phi_image, PhiReport, SubCheck, TensorExpr};
pub use presentation::{emit_presentations, Generator, Presentation, Presentations, Relation, Term};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dynset::DynSet;
use crate::error::{Error, Result};

/// Exact coefficients.
pub type Q = Ratio<i64>;

/// Largest supported path cap.
pub const MAX_PATH_CAP: usize = 3;

/// A path in `Q(X)`: a start vertex followed by the colors of its arrows.
/// The `i`-th arrow is `(λᵢ, xᵢ)` with `λᵢ₊₁ = λᵢ ⇀ xᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    pub start: usize,
    #[serde(default)]
    pub colors: Vec<usize>,
}

impl Path {
    pub fn vertex(lambda: usize) -> Self {
        Path {
            start: lambda,
            colors: Vec::new(),
        }
    }

    pub fn new(start: usize, colors: Vec<usize>) -> Self {
        Path { start, colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn validate(&self, x: &DynSet) -> Result<()> {
        if self.start >= x.n() || self.colors.iter().any(|&c| c >= x.m()) {
            return Err(Error::InvalidPath(format!("{self:?} is not a path in Q(X)")));
        }
        Ok(())
    }

    /// The arrows `(λᵢ, xᵢ)`.
    pub fn arrows(&self, x: &DynSet) -> Vec<(usize, usize)> {
        let mut l = self.start;
        self.colors
            .iter()
            .map(|&c| {
                let a = (l, c);
                l = x.act(l, c);
                a
            })
            .collect()
    }

    pub fn target(&self, x: &DynSet) -> usize {
        self.colors.iter().fold(self.start, |l, &c| x.act(l, c))
    }

    /// `p p'`, defined when `p` ends where `p'` starts.
    pub fn concat(&self, other: &Path, x: &DynSet) -> Option<Path> {
        (self.target(x) == other.start).then(|| Path {
            start: self.start,
            colors: self.colors.iter().chain(&other.colors).copied().collect(),
        })
    }

    /// All paths of a given length, ordered by start vertex then colors.
    pub fn all(x: &DynSet, len: usize) -> Vec<Path> {
        let sizes: Vec<usize> = std::iter::once(x.n()).chain(std::iter::repeat(x.m()).take(len)).collect();
        crate::dyb::tuples(&sizes)
            .map(|t| Path::new(t[0], t[1..].to_vec()))
            .collect()
    }

    /// `λ` for a vertex, `(λ₁,x₁)(λ₂,x₂)…` otherwise.
    pub fn render(&self, x: &DynSet) -> String {
        if self.colors.is_empty() {
            return self.start.to_string();
        }
        self.arrows(x).iter().map(|(l, c)| format!("({l},{c})")).collect()
    }
}

pub(crate) fn check_cap(m: usize) -> Result<()> {
    if m > MAX_PATH_CAP {
        return Err(Error::SizeLimit(format!("path cap {m} exceeds {MAX_PATH_CAP}")));
    }
    Ok(())
}

/// Dense coefficient helpers over `Λ × Λ`.
pub(crate) mod coeff {
    use super::*;

    pub fn ones(n: usize) -> Vec<Q> {
        vec![Q::one(); n * n]
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Vec<Q> {
        (0..n * n)
            .map(|i| if f(i / n, i % n) { Q::one() } else { Q::zero() })
            .collect()
    }

    pub fn delta(n: usize, lambda: usize) -> Vec<Q> {
        from_fn(n, |l, _| l == lambda)
    }

    pub fn delta_bar(n: usize, mu: usize) -> Vec<Q> {
        from_fn(n, |_, m| m == mu)
    }

    pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    pub fn is_zero(a: &[Q]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// `c'` with `L⁺_xy · c = c' · L⁺_xy`: `c'(λ, μ) = c(λ⇀x, μ⇀y)`.
    pub fn pass_left(x: &DynSet, a: usize, b: usize, c: &[Q]) -> Vec<Q> {
        let n = x.n();
        (0..n * n)
            .map(|i| c[x.act(i / n, a) * n + x.act(i % n, b)])
            .collect()
    }

    /// Compact text: a constant prints as its value, anything else as the
    /// nonzero entries `λ,μ:v`.
    pub fn render(n: usize, c: &[Q]) -> String {
        if let Some(first) = c.first() {
            if c.iter().all(|v| v == first) {
                return first.to_string();
            }
        }
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{},{}:{v}", i / n, i % n))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Serializes rational vectors as strings such as `"1"` or `"-1/2"`.
pub(crate) mod ratio_strings {
    use super::Q;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<Q>().map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn paths_on_fg() {
        let x = fixtures::f_g();
        let p = Path::new(0, vec![1, 1]);
        assert_eq!(p.arrows(&x), vec![(0, 1), (1, 1)]);
        assert_eq!(p.target(&x), 0);
        assert_eq!(p.render(&x), "(0,1)(1,1)");
        assert_eq!(Path::vertex(1).render(&x), "1");
        assert_eq!(Path::all(&x, 0).len(), 2);
        assert_eq!(Path::all(&x, 3).len(), 16);
        let q = Path::new(1, vec![0]);
        assert_eq!(Path::new(0, vec![1]).concat(&q, &x), Some(Path::new(0, vec![1, 0])));
        assert_eq!(Path::new(0, vec![0]).concat(&q, &x), None);
        assert!(Path::new(0, vec![2]).validate(&x).is_err());
    }

    #[test]
    fn rationals_as_strings() {
        #[derive(Serialize, Deserialize)]
        struct W {
            #[serde(with = "ratio_strings")]
            v: Vec<Q>,
        }
        let w = W {
            v: vec![Q::new(-1, 2), Q::from_integer(3)],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"v":["-1/2","3"]}"#);
        let back: W = serde_json::from_str(&s).unwrap();
        assert_eq!(back.v, w.v);
    }
}
