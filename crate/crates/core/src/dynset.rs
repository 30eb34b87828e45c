//! Finite dynamical sets over a vertex set and their morphisms.
//!
//! A dynamical set is a carrier `0..m` together with an action table
//! `lambda ⇀ x`. Morphisms are parameter-dependent maps that respect the
//! action. Everything is stored as flat row-major tables.

use crate::error::{Error, Result};

/// The parameter set. Vertices are `0..size`; labels are only for display.
#[derive(Debug, Clone)]
pub struct VertexSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for VertexSet {
    // labels are cosmetic
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}
impl Eq for VertexSet {}

impl VertexSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyVertexSet);
        }
        Ok(VertexSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::InvalidLabels(format!("duplicate label {l:?}")));
            }
        }
        Ok(VertexSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(ls) => ls[v].clone(),
            None => v.to_string(),
        }
    }

    pub(crate) fn ensure_same(&self, other: &VertexSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VertexSetMismatch {
                left: self.size,
                right: other.size,
            })
        }
    }
}

/// An object of DSet(Λ): carrier `0..m` with action `λ ⇀ x`.
///
/// Equality is table equality. An empty carrier (`m = 0`) is allowed; it
/// is the initial object and is needed for the degenerate quiver cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynSet {
    vertices: VertexSet,
    m: usize,
    action: Vec<usize>,
}

impl DynSet {
    /// Builds and validates a dynamical set from an `n × m` table.
    pub fn new(n: usize, m: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_vertices(VertexSet::new(n)?, m, action)
    }

    pub fn with_vertices(vertices: VertexSet, m: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.size();
        if action.len() != n {
            return Err(Error::Shape {
                table: "action",
                detail: format!("expected {n} rows, found {}", action.len()),
            });
        }
        let mut flat = Vec::with_capacity(n * m);
        for (lambda, row) in action.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape {
                    table: "action",
                    detail: format!("row {lambda} has length {}, expected {m}", row.len()),
                });
            }
            for (x, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRange {
                        table: "action",
                        row: lambda,
                        col: x,
                        value: v,
                        bound: n,
                    });
                }
                flat.push(v);
            }
        }
        Ok(DynSet {
            vertices,
            m,
            action: flat,
        })
    }

    /// Builds from a closure; panics if the closure leaves `0..n`.
    pub fn from_fn(n: usize, m: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|l| (0..m).map(|x| f(l, x)).collect()).collect();
        Self::new(n, m, rows)
    }

    /// The terminal object K_Λ: carrier Λ and `λ ⇀ x = x`.
    pub fn terminal(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |_, x| x)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.size()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn act(&self, lambda: usize, x: usize) -> usize {
        self.action[lambda * self.m + x]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        if self.m == 0 {
            return vec![Vec::new(); self.n()];
        }
        self.action.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn is_terminal(&self) -> bool {
        self.m == self.n() && (0..self.n()).all(|l| (0..self.m).all(|x| self.act(l, x) == x))
    }

    /// `X ⊗ Y`: carrier pairs `(x, y)` at index `x·|Y| + y`, action `(λ⇀x)⇀y`.
    pub fn tensor(&self, other: &DynSet) -> Result<DynSet> {
        self.vertices.ensure_same(&other.vertices)?;
        let (m1, m2) = (self.m, other.m);
        let mut action = Vec::with_capacity(self.n() * m1 * m2);
        for lambda in 0..self.n() {
            for x in 0..m1 {
                let mu = self.act(lambda, x);
                for y in 0..m2 {
                    action.push(other.act(mu, y));
                }
            }
        }
        Ok(DynSet {
            vertices: self.vertices.clone(),
            m: m1 * m2,
            action,
        })
    }
}

/// Validates a raw table into a [`DynSet`].
pub fn validate_dynset(n: usize, m: usize, action: Vec<Vec<usize>>) -> Result<DynSet> {
    DynSet::new(n, m, action)
}

/// A morphism `f: X → Y` of DSet(Λ), stored as an `n × |X|` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynMorphism {
    source: DynSet,
    target: DynSet,
    table: Vec<usize>,
}

impl DynMorphism {
    /// Validates `λ ⇀ f(λ,x) = λ ⇀ x` for every cell.
    pub fn new(source: DynSet, target: DynSet, table: Vec<usize>) -> Result<Self> {
        source.vertices.ensure_same(&target.vertices)?;
        let (n, m) = (source.n(), source.m());
        if table.len() != n * m {
            return Err(Error::Shape {
                table: "morphism",
                detail: format!("expected {} entries, found {}", n * m, table.len()),
            });
        }
        for lambda in 0..n {
            for x in 0..m {
                let v = table[lambda * m + x];
                if v >= target.m() {
                    return Err(Error::OutOfRange {
                        table: "morphism",
                        row: lambda,
                        col: x,
                        value: v,
                        bound: target.m(),
                    });
                }
                if target.act(lambda, v) != source.act(lambda, x) {
                    return Err(Error::InvalidMorphism { lambda, x });
                }
            }
        }
        Ok(DynMorphism {
            source,
            target,
            table,
        })
    }

    pub fn from_rows(source: DynSet, target: DynSet, rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = source.m();
        if rows.len() != source.n() || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape {
                table: "morphism",
                detail: format!("expected {}×{} rows", source.n(), m),
            });
        }
        Self::new(source, target, rows.concat())
    }

    pub fn from_fn(source: DynSet, target: DynSet, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..source.n())
            .flat_map(|l| (0..source.m()).map(move |x| (l, x)))
            .map(|(l, x)| f(l, x))
            .collect();
        Self::new(source, target, table)
    }

    pub fn identity(x: &DynSet) -> DynMorphism {
        let table = (0..x.n()).flat_map(|_| 0..x.m()).collect();
        DynMorphism {
            source: x.clone(),
            target: x.clone(),
            table,
        }
    }

    pub fn source(&self) -> &DynSet {
        &self.source
    }

    pub fn target(&self) -> &DynSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let m = self.source.m();
        (0..self.source.n())
            .map(|l| self.table[l * m..(l + 1) * m].to_vec())
            .collect()
    }

    #[inline]
    pub fn apply(&self, lambda: usize, x: usize) -> usize {
        self.table[lambda * self.source.m() + x]
    }

    /// `self ⋄ f`, that is `(λ, x) ↦ self(λ, f(λ, x))`.
    pub fn after(&self, f: &DynMorphism) -> Result<DynMorphism> {
        compose_morphisms(self, f)
    }

    /// Row-wise inverse when every row is a bijection.
    pub fn inverse(&self) -> Option<DynMorphism> {
        let (n, m) = (self.source.n(), self.source.m());
        if self.target.m() != m {
            return None;
        }
        let mut inv = vec![usize::MAX; n * m];
        for lambda in 0..n {
            for x in 0..m {
                let y = self.apply(lambda, x);
                if inv[lambda * m + y] != usize::MAX {
                    return None;
                }
                inv[lambda * m + y] = x;
            }
        }
        let out = DynMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            table: inv,
        };
        debug_assert!(DynMorphism::new(out.source.clone(), out.target.clone(), out.table.clone()).is_ok());
        Some(out)
    }
}

/// `(g ⋄ f)(λ, x) = g(λ, f(λ, x))`.
pub fn compose_morphisms(g: &DynMorphism, f: &DynMorphism) -> Result<DynMorphism> {
    if f.target != g.source {
        return Err(Error::CompositionMismatch);
    }
    let m = f.source.m();
    let table = (0..f.source.n())
        .flat_map(|l| (0..m).map(move |x| (l, x)))
        .map(|(l, x)| g.apply(l, f.apply(l, x)))
        .collect();
    let out = DynMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        table,
    };
    debug_assert!(DynMorphism::new(out.source.clone(), out.target.clone(), out.table.clone()).is_ok());
    Ok(out)
}

/// `(f ⊗ g)(λ, (x, y)) = (f(λ, x), g(λ ⇀ x, y))`.
pub fn tensor_morphisms(f: &DynMorphism, g: &DynMorphism) -> Result<DynMorphism> {
    f.source.vertices.ensure_same(&g.source.vertices)?;
    let source = f.source.tensor(&g.source)?;
    let target = f.target.tensor(&g.target)?;
    let (mx, my, my2) = (f.source.m(), g.source.m(), g.target.m());
    let mut table = Vec::with_capacity(source.n() * mx * my);
    for lambda in 0..source.n() {
        for x in 0..mx {
            let fx = f.apply(lambda, x);
            let mu = f.source.act(lambda, x);
            for y in 0..my {
                table.push(fx * my2 + g.apply(mu, y));
            }
        }
    }
    let out = DynMorphism {
        source,
        target,
        table,
    };
    debug_assert!(DynMorphism::new(out.source.clone(), out.target.clone(), out.table.clone()).is_ok());
    Ok(out)
}

/// Returns the inverse when `f` is an isomorphism, i.e. all rows are bijections.
pub fn is_isomorphism(f: &DynMorphism) -> Option<DynMorphism> {
    f.inverse()
}

/// The unique morphism `ψ_X: X → K_Λ`, `ψ_X(λ, x) = λ ⇀ x`.
pub fn terminal_morphism(x: &DynSet) -> DynMorphism {
    let mut target = DynSet::terminal(x.n()).expect("n >= 1");
    target.vertices = x.vertices.clone();
    DynMorphism {
        source: x.clone(),
        target,
        table: x.action.clone(),
    }
}

/// Enumerates every morphism `X → Y` in lexicographic table order.
///
/// Each cell `(λ, x)` ranges over `{ y : λ ⇀ y = λ ⇀ x }`.
pub fn enumerate_morphisms(x: &DynSet, y: &DynSet) -> Result<Vec<DynMorphism>> {
    x.vertices.ensure_same(&y.vertices)?;
    let cells: Vec<Vec<usize>> = (0..x.n())
        .flat_map(|l| (0..x.m()).map(move |c| (l, c)))
        .map(|(l, c)| (0..y.m()).filter(|&v| y.act(l, v) == x.act(l, c)).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; cells.len()];
    fn rec(
        i: usize,
        cells: &[Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<DynMorphism>,
        x: &DynSet,
        y: &DynSet,
    ) {
        if i == cells.len() {
            out.push(DynMorphism {
                source: x.clone(),
                target: y.clone(),
                table: cur.clone(),
            });
            return;
        }
        for &v in &cells[i] {
            cur[i] = v;
            rec(i + 1, cells, cur, out, x, y);
        }
    }
    rec(0, &cells, &mut cur, &mut out, x, y);
    Ok(out)
}
