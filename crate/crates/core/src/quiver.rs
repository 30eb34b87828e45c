//! Finite quivers over a vertex set and their fiber products.

use crate::dynset::VertexSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A finite set of arrows with source and target maps into Λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: VertexSet,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: VertexSet, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertices.size();
        let mut seen = std::collections::BTreeSet::new();
        for (i, a) in arrows.iter().enumerate() {
            for (col, v) in [(0, a.src), (1, a.tgt)] {
                if v >= n {
                    return Err(Error::OutOfRange {
                        table: "arrows",
                        row: i,
                        col,
                        value: v,
                        bound: n,
                    });
                }
            }
            if !seen.insert(a.label.as_str()) {
                return Err(Error::InvalidLabels(format!("duplicate arrow label {:?}", a.label)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.size()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.arrows[a].tgt
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == v).count()
    }

    /// Arrows leaving `v`, in storage order.
    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == v).collect()
    }
}

/// An arrow map preserving sources and targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    source: Quiver,
    target: Quiver,
    table: Vec<usize>,
}

impl QuiverMorphism {
    pub fn new(source: Quiver, target: Quiver, table: Vec<usize>) -> Result<Self> {
        source.vertices.ensure_same(&target.vertices)?;
        if table.len() != source.len() {
            return Err(Error::Shape {
                table: "quiver morphism",
                detail: format!("expected {} entries, found {}", source.len(), table.len()),
            });
        }
        for (a, &b) in table.iter().enumerate() {
            if b >= target.len() {
                return Err(Error::OutOfRange {
                    table: "quiver morphism",
                    row: a,
                    col: 0,
                    value: b,
                    bound: target.len(),
                });
            }
            if source.src(a) != target.src(b) || source.tgt(a) != target.tgt(b) {
                return Err(Error::InvalidQuiverMorphism { arrow: a });
            }
        }
        Ok(QuiverMorphism {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &Quiver {
        &self.source
    }

    pub fn target(&self) -> &Quiver {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn after(&self, f: &QuiverMorphism) -> Result<QuiverMorphism> {
        if f.target != self.source {
            return Err(Error::CompositionMismatch);
        }
        let table = f.table.iter().map(|&b| self.table[b]).collect();
        QuiverMorphism::new(f.source.clone(), self.target.clone(), table)
    }
}

/// `Q ×_Λ R`: composable pairs `(a, b)` with `tgt a = src b`, ordered
/// lexicographically by `(a, b)`. Labels are `a.b`.
pub fn fiber_product(q: &Quiver, r: &Quiver) -> Result<(Quiver, Vec<(usize, usize)>)> {
    q.vertices.ensure_same(&r.vertices)?;
    let mut pairs = Vec::new();
    let mut arrows = Vec::new();
    for (ia, a) in q.arrows.iter().enumerate() {
        for (ib, b) in r.arrows.iter().enumerate() {
            if a.tgt == b.src {
                pairs.push((ia, ib));
                arrows.push(Arrow {
                    src: a.src,
                    tgt: b.tgt,
                    label: format!("{}.{}", a.label, b.label),
                });
            }
        }
    }
    let quiver = Quiver::new(q.vertices.clone(), arrows)?;
    Ok((quiver, pairs))
}

/// Number of arrow maps `Q → R` preserving source and target, found by
/// exhaustive enumeration. Used for fullness counting.
pub fn count_quiver_morphisms(q: &Quiver, r: &Quiver) -> u128 {
    q.arrows
        .iter()
        .map(|a| r.arrows.iter().filter(|b| b.src == a.src && b.tgt == a.tgt).count() as u128)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Quiver {
        let arrows = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .map(|(s, t)| Arrow {
                src: s,
                tgt: t,
                label: format!("{s}{t}"),
            })
            .collect();
        Quiver::new(VertexSet::new(n).unwrap(), arrows).unwrap()
    }

    #[test]
    fn complete_quiver_paths() {
        let q = complete(2);
        let (fp, pairs) = fiber_product(&q, &q).unwrap();
        assert_eq!(fp.len(), 8);
        assert_eq!(pairs[0], (0, 0));
        assert_eq!(pairs[1], (0, 1));
        assert_eq!(pairs[2], (1, 2));
    }

    #[test]
    fn empty_and_loop() {
        let v = VertexSet::new(2).unwrap();
        let empty = Quiver::new(v.clone(), vec![]).unwrap();
        let q = complete(2);
        assert!(fiber_product(&empty, &q).unwrap().0.is_empty());
        let lp = Quiver::new(
            v,
            vec![Arrow {
                src: 0,
                tgt: 0,
                label: "l".into(),
            }],
        )
        .unwrap();
        let (fp, pairs) = fiber_product(&lp, &lp).unwrap();
        assert_eq!(pairs, vec![(0, 0)]);
        assert_eq!(fp.arrows()[0].label, "l.l");
    }

    #[test]
    fn rejects_duplicates_and_bad_vertices() {
        let v = VertexSet::new(1).unwrap();
        let a = Arrow {
            src: 0,
            tgt: 0,
            label: "a".into(),
        };
        assert!(Quiver::new(v.clone(), vec![a.clone(), a]).is_err());
        let bad = Arrow {
            src: 0,
            tgt: 1,
            label: "b".into(),
        };
        assert_eq!(Quiver::new(v, vec![bad]).unwrap_err().code(), "OutOfRange");
    }

    #[test]
    fn morphism_must_preserve_endpoints() {
        let q = complete(2);
        let swap = vec![1, 0, 3, 2];
        assert!(QuiverMorphism::new(q.clone(), q.clone(), swap).is_err());
        let id = QuiverMorphism::new(q.clone(), q.clone(), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(id.after(&id).unwrap(), id);
        assert_eq!(count_quiver_morphisms(&q, &q), 1);
    }
}
