//! The embedding `Q: DSet(Λ) → Quiv(Λ)`, its monoidal structure, the
//! inverse on the essential image, and the braided quiver `σ̃`.

use crate::dyb::DybCandidate;
use crate::dynset::{DynMorphism, DynSet};
use crate::error::{Error, Result};
use crate::quiver::{fiber_product, Arrow, Quiver, QuiverMorphism};

/// `Q(X)`: arrows `(λ, x)` at index `λ·m + x`, `src = λ`, `tgt = λ ⇀ x`.
pub fn q_object(x: &DynSet) -> Quiver {
    let arrows = (0..x.n())
        .flat_map(|l| (0..x.m()).map(move |c| (l, c)))
        .map(|(l, c)| Arrow {
            src: l,
            tgt: x.act(l, c),
            label: format!("({l},{c})"),
        })
        .collect();
    Quiver::new(x.vertices().clone(), arrows).expect("labels are distinct and endpoints in range")
}

/// `Q(f)(λ, x) = (λ, f(λ, x))`.
pub fn q_morphism(f: &DynMorphism) -> Result<QuiverMorphism> {
    // re-validate so a hand-built table cannot slip through
    let f = DynMorphism::new(f.source().clone(), f.target().clone(), f.table().to_vec())?;
    let my = f.target().m();
    let table = (0..f.source().n())
        .flat_map(|l| (0..f.source().m()).map(move |x| (l, x)))
        .map(|(l, x)| l * my + f.apply(l, x))
        .collect();
    QuiverMorphism::new(q_object(f.source()), q_object(f.target()), table)
}

/// Recovers `f` from `Q(f)` by the second projection.
pub fn project_morphism(qf: &QuiverMorphism, x: &DynSet, y: &DynSet) -> Result<DynMorphism> {
    if qf.source() != &q_object(x) || qf.target() != &q_object(y) {
        return Err(Error::SizeMismatch("quiver morphism is not between Q(X) and Q(Y)".into()));
    }
    let my = y.m();
    let table = qf.table().iter().map(|&b| b % my.max(1)).collect();
    DynMorphism::new(x.clone(), y.clone(), table)
}

/// The bijection `Q(X) ×_Λ Q(Y) ≅ Q(X ⊗ Y)`, `((λ,x),(μ,y)) ↦ (λ,(x,y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q2Structure {
    /// pair index in the fiber product ↦ arrow index of `Q(X ⊗ Y)`
    pub forward: Vec<usize>,
    /// the inverse table
    pub backward: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

pub fn q2_structure(x: &DynSet, y: &DynSet) -> Result<Q2Structure> {
    let (qx, qy) = (q_object(x), q_object(y));
    let (_, pairs) = fiber_product(&qx, &qy)?;
    let (mx, my) = (x.m(), y.m());
    let forward: Vec<usize> = pairs
        .iter()
        .map(|&(a, b)| {
            let (l, cx) = (a / mx, a % mx);
            let cy = b % my;
            l * mx * my + cx * my + cy
        })
        .collect();
    let mut backward = vec![usize::MAX; forward.len()];
    for (p, &a) in forward.iter().enumerate() {
        backward[a] = p;
    }
    debug_assert!(backward.iter().all(|&v| v != usize::MAX));
    Ok(Q2Structure {
        forward,
        backward,
        pairs,
    })
}

/// A dynamical set recovered from a quiver, with the arrow bijection
/// `Q(X) → Q` (arrow `(λ, x)` of `Q(X)` goes to `iso[λ·m + x]`).
#[derive(Debug, Clone)]
pub struct Recovered {
    pub dynset: DynSet,
    pub iso: Vec<usize>,
}

/// Inverse of `Q` on the essential image. Requires all out-degrees equal;
/// `φ_λ` is the order-preserving bijection `src⁻¹(λ₀) → src⁻¹(λ)`.
pub fn dynset_from_quiver(q: &Quiver, basepoint: usize) -> Result<Recovered> {
    let n = q.n();
    if basepoint >= n {
        return Err(Error::OutOfRange {
            table: "basepoint",
            row: 0,
            col: 0,
            value: basepoint,
            bound: n,
        });
    }
    let outs: Vec<Vec<usize>> = (0..n).map(|v| q.out_arrows(v)).collect();
    let m = outs[basepoint].len();
    if let Some(other) = (0..n).find(|&v| outs[v].len() != m) {
        return Err(Error::NotEssentialImage {
            lambda: basepoint.min(other),
            other: basepoint.max(other),
        });
    }
    let rows = (0..n).map(|l| outs[l].iter().map(|&a| q.tgt(a)).collect()).collect();
    let dynset = DynSet::with_vertices(q.vertices().clone(), m, rows)?;
    let iso = outs.concat();
    Ok(Recovered { dynset, iso })
}

/// `σ̃` on `Q(X) ×_Λ Q(X)`, stored over the fiber-product pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedQuiverMap {
    quiver: Quiver,
    pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
    table: Vec<usize>,
}

impl BraidedQuiverMap {
    /// `table[p]` is the pair index of the image of pair `p`.
    pub fn new(quiver: Quiver, table: Vec<usize>) -> Result<Self> {
        let (_, pairs) = fiber_product(&quiver, &quiver)?;
        if table.len() != pairs.len() {
            return Err(Error::Shape {
                table: "braided quiver map",
                detail: format!("expected {} entries, found {}", pairs.len(), table.len()),
            });
        }
        let a = quiver.len();
        let mut index = vec![usize::MAX; a * a];
        for (p, &(u, v)) in pairs.iter().enumerate() {
            index[u * a + v] = p;
        }
        for (p, &img) in table.iter().enumerate() {
            if img >= pairs.len() {
                return Err(Error::OutOfRange {
                    table: "braided quiver map",
                    row: p,
                    col: 0,
                    value: img,
                    bound: pairs.len(),
                });
            }
            let ((a1, b1), (a2, b2)) = (pairs[p], pairs[img]);
            if quiver.src(a1) != quiver.src(a2) || quiver.tgt(b1) != quiver.tgt(b2) {
                return Err(Error::InvalidQuiverMorphism { arrow: p });
            }
        }
        Ok(BraidedQuiverMap {
            quiver,
            pairs,
            index,
            table,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair(&self, p: usize) -> (usize, usize) {
        self.pairs[p]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.index[a * self.quiver.len() + b];
        (v != usize::MAX).then_some(v)
    }

    /// `σ̃(a, b)`; panics on a non-composable pair.
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let p = self.pair_index(a, b).expect("composable pair");
        self.pairs[self.table[p]]
    }

    /// The quadruples `(a, b, c, d)` of arrow labels with `σ̃(a, b) = (c, d)`.
    pub fn label_quadruples(&self) -> Vec<[String; 4]> {
        let lab = |i: usize| self.quiver.arrows()[i].label.clone();
        self.pairs
            .iter()
            .zip(&self.table)
            .map(|(&(a, b), &img)| {
                let (c, d) = self.pairs[img];
                [lab(a), lab(b), lab(c), lab(d)]
            })
            .collect()
    }
}

/// `σ̃((λ,x),(λ⇀x,y)) = ((λ,L),(λ⇀L,R))` for `(L, R) = σ(λ)(x, y)`.
pub fn braided_quiver(s: &DybCandidate) -> Result<BraidedQuiverMap> {
    s.ensure_invariance()?;
    let x = s.dynset();
    let m = x.m();
    let q = q_object(x);
    let q2 = q2_structure(x, x)?;
    let table = q2
        .pairs
        .iter()
        .map(|&(a, b)| {
            let (l, cx, cy) = (a / m, a % m, b % m);
            let (u, v) = s.get(l, cx, cy);
            // Q⁽²⁾ order equals Q(X⊗X) order
            q2.backward[l * m * m + u * m + v]
        })
        .collect();
    BraidedQuiverMap::new(q, table)
}

/// Reads σ back from a braided map on `Q(X)` through `Q⁽²⁾`.
pub fn sigma_from_braided(x: &DynSet, b: &BraidedQuiverMap) -> Result<DybCandidate> {
    if b.quiver() != &q_object(x) {
        return Err(Error::SizeMismatch("braided map is not on Q(X)".into()));
    }
    let m = x.m();
    let q2 = q2_structure(x, x)?;
    DybCandidate::from_fn(x, |l, cx, cy| {
        let p = q2.backward[l * m * m + cx * m + cy];
        let a = q2.forward[b.table()[p]] % (m * m);
        (a / m, a % m)
    })
}
