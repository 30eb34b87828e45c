use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Q;
use crate::dyb::{check_braid_on_quiver, DybCandidate};
use crate::embedding::{braided_quiver, BraidedQuiverMap};
use crate::error::Result;
use crate::quiver::Quiver;

/// Weights `w[a b; c d]` on quadruples of arrows of `Q(X)`, kept sparse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceModel {
    quiver: Quiver,
    pairs: Vec<(usize, usize)>,
    weights: BTreeMap<[usize; 4], Q>,
}

impl FaceModel {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `Q⁽²⁾` in fiber-product order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn weights(&self) -> &BTreeMap<[usize; 4], Q> {
        &self.weights
    }

    pub fn weight(&self, a: usize, b: usize, c: usize, d: usize) -> Q {
        self.weights.get(&[a, b, c, d]).copied().unwrap_or_else(Q::zero)
    }

    /// `src a = src c`, `tgt a = src b`, `tgt c = src d`, `tgt b = tgt d`.
    pub fn forms_face(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let q = &self.quiver;
        q.src(a) == q.src(c) && q.tgt(a) == q.src(b) && q.tgt(c) == q.src(d) && q.tgt(b) == q.tgt(d)
    }

    /// The matrix of `w` on `Q⁽²⁾`: column `(a,b)` holds the coefficients of `w(a ⊗ b)`.
    pub fn matrix(&self) -> Vec<Vec<Q>> {
        let k = self.pairs.len();
        let mut out = vec![vec![Q::zero(); k]; k];
        for (col, &(a, b)) in self.pairs.iter().enumerate() {
            for (row, &(c, d)) in self.pairs.iter().enumerate() {
                out[row][col] = self.weight(a, b, c, d);
            }
        }
        out
    }

    /// Every column has a single 1 and nothing else.
    pub fn is_selection(&self) -> bool {
        let m = self.matrix();
        let k = self.pairs.len();
        (0..k).all(|col| {
            let ones = (0..k).filter(|&r| m[r][col].is_one()).count();
            let zeros = (0..k).filter(|&r| m[r][col].is_zero()).count();
            ones == 1 && zeros == k - 1
        })
    }

    pub fn is_permutation(&self) -> bool {
        if !self.is_selection() {
            return false;
        }
        let m = self.matrix();
        m.iter().all(|row| row.iter().filter(|v| v.is_one()).count() == 1)
    }

    /// Reads a selection matrix back as a map on `Q⁽²⁾`.
    pub fn as_braided(&self) -> Option<BraidedQuiverMap> {
        if !self.is_selection() {
            return None;
        }
        let m = self.matrix();
        let table = (0..self.pairs.len())
            .map(|col| (0..self.pairs.len()).find(|&r| m[r][col].is_one()).expect("selection"))
            .collect();
        BraidedQuiverMap::new(self.quiver.clone(), table).ok()
    }

    /// `(a, b, c, d, w)` over the stored faces, as arrow labels.
    pub fn labelled(&self) -> Vec<(String, String, String, String, Q)> {
        let lab = |i: usize| self.quiver.arrows()[i].label.clone();
        self.weights
            .iter()
            .map(|(&[a, b, c, d], &w)| (lab(a), lab(b), lab(c), lab(d), w))
            .collect()
    }
}

/// Weight 1 on exactly the quadruples `(a, b, σ̃(a, b))`.
pub fn face_weights(s: &DybCandidate) -> Result<FaceModel> {
    let b = braided_quiver(s)?;
    let weights = b
        .pairs()
        .iter()
        .zip(b.table())
        .map(|(&(a, bb), &img)| {
            let (c, d) = b.pair(img);
            ([a, bb, c, d], Q::one())
        })
        .collect();
    Ok(FaceModel {
        quiver: b.quiver().clone(),
        pairs: b.pairs().to_vec(),
        weights,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarTriangularReport {
    /// Each `σ(λ)` is invertible and each `λ ↦ λ ⇀ x` is a bijection.
    pub shibukawa_condition: bool,
    pub invertible_w: bool,
    pub braid_w: bool,
}

impl StarTriangularReport {
    pub fn passed(&self) -> bool {
        self.shibukawa_condition && self.invertible_w && self.braid_w
    }
}

pub fn star_triangular_check(s: &DybCandidate) -> StarTriangularReport {
    let x = s.dynset();
    let sigma_bijective = (0..x.n()).all(|l| s.is_bijective_at(l));
    let action_bijective = (0..x.m()).all(|c| {
        let mut seen = vec![false; x.n()];
        (0..x.n()).all(|l| !std::mem::replace(&mut seen[x.act(l, c)], true))
    });
    let (invertible_w, braid_w) = match face_weights(s) {
        Ok(f) => (
            f.is_permutation(),
            f.as_braided().is_some_and(|b| check_braid_on_quiver(&b).passed),
        ),
        Err(_) => (false, false),
    };
    StarTriangularReport {
        shibukawa_condition: sigma_bijective && action_bijective,
        invertible_w,
        braid_w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ph::sigma_from_ternary;

    fn arrow(f: &FaceModel, label: &str) -> usize {
        f.quiver().arrows().iter().position(|a| a.label == label).unwrap()
    }

    #[test]
    fn identity_is_diagonal() {
        let f = face_weights(&DybCandidate::identity(&fixtures::k(2))).unwrap();
        assert_eq!(f.pairs().len(), 8);
        assert_eq!(f.weights().len(), 8);
        let m = f.matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v.is_one(), i == j);
            }
        }
    }

    #[test]
    fn group_ternary_weight_on_terminal_carrier() {
        // ⟨0,1,1⟩ = 0, so σ₀(0)(1,1) = (0,1)
        let s = sigma_from_ternary(&fixtures::k(2), &fixtures::group_ternary(2)).unwrap();
        assert_eq!(s.get(0, 1, 1), (0, 1));
        let f = face_weights(&s).unwrap();
        let [a, b, c, d] = ["(0,1)", "(1,1)", "(0,0)", "(0,1)"].map(|l| arrow(&f, l));
        assert!(f.forms_face(a, b, c, d));
        assert!(f.weight(a, b, c, d).is_one());
        // not a face: source of c differs from source of a
        let e = arrow(&f, "(1,0)");
        assert!(!f.forms_face(a, b, e, d));
        assert!(f.weight(a, b, e, d).is_zero());
        assert!(!f.weights().contains_key(&[a, b, e, d]));
    }

    #[test]
    fn weights_only_on_faces_and_one_per_column() {
        let s = sigma_from_ternary(&fixtures::f_g(), &fixtures::group_ternary(2)).unwrap();
        let f = face_weights(&s).unwrap();
        assert!(f.weights().keys().all(|&[a, b, c, d]| f.forms_face(a, b, c, d)));
        assert!(f.is_selection());
        assert!(f.is_permutation());
    }

    #[test]
    fn star_triangular_reports() {
        let grp = sigma_from_ternary(&fixtures::f_g(), &fixtures::group_ternary(2)).unwrap();
        assert!(star_triangular_check(&grp).passed());
        let id = DybCandidate::identity(&fixtures::f_g());
        assert!(star_triangular_check(&id).passed());
        // λ ↦ λ ⇀ x is constant on the terminal object
        let on_k = sigma_from_ternary(&fixtures::k(2), &fixtures::group_ternary(2)).unwrap();
        let r = star_triangular_check(&on_k);
        assert!(!r.shibukawa_condition);
        assert!(r.invertible_w && r.braid_w);
        let squash = DybCandidate::from_fn(&fixtures::k(2), |_, _, y| (y, y)).unwrap();
        let r = star_triangular_check(&squash);
        assert!(!r.shibukawa_condition);
        assert!(!r.invertible_w);
    }
}
