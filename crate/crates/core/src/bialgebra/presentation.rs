use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::face::{face_weights, star_triangular_check, FaceModel};
use super::{check_cap, coeff, ratio_strings, Path, Q};
use crate::dyb::DybCandidate;
use crate::dynset::DynSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// `e[p;q]` for paths of equal length.
    E { p: Path, q: Path },
    LPlus { a: usize, b: usize },
    LMinus { a: usize, b: usize },
    /// The coefficient symbol `δ_λ`.
    Delta { lambda: usize },
    /// The coefficient symbol `δ̄_λ`.
    DeltaBar { lambda: usize },
}

impl Generator {
    pub fn render(&self, x: &DynSet) -> String {
        match self {
            Generator::E { p, q } => format!("e[{};{}]", p.render(x), q.render(x)),
            Generator::LPlus { a, b } => format!("L+[{a},{b}]"),
            Generator::LMinus { a, b } => format!("L-[{a},{b}]"),
            Generator::Delta { lambda } => format!("d[{lambda}]"),
            Generator::DeltaBar { lambda } => format!("dbar[{lambda}]"),
        }
    }
}

/// `coeff · g₁ g₂ ⋯` with `word` indexing the generator list. The
/// coefficient is a scalar (length 1) or a function on `Λ × Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "ratio_strings")]
    pub coeff: Vec<Q>,
    pub word: Vec<usize>,
}

/// `Σ terms = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn count(&self, kind: &str) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }

    /// Every word refers to a declared generator and coefficients have one
    /// of the two allowed lengths.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (i, r) in self.relations.iter().enumerate() {
            for t in &r.terms {
                if let Some(&g) = t.word.iter().find(|&&g| g >= self.generators.len()) {
                    return Err(Error::OutOfRange {
                        table: "relation word",
                        row: i,
                        col: 0,
                        value: g,
                        bound: self.generators.len(),
                    });
                }
                if t.coeff.len() != 1 && t.coeff.len() != n * n {
                    return Err(Error::Shape {
                        table: "relation coefficient",
                        detail: format!("relation {i} has a coefficient of length {}", t.coeff.len()),
                    });
                }
            }
        }
        Ok(())
    }

    /// One relation per line, `Σ … = 0`, in the `e[p;q]` / `L+[a,b]` notation.
    pub fn render_text(&self, x: &DynSet) -> String {
        let n = x.n();
        let mut out = format!("# {}: {} generators, {} relations\n", self.name, self.generators.len(), self.relations.len());
        for r in &self.relations {
            let body: Vec<String> = r
                .terms
                .iter()
                .map(|t| {
                    let c = if t.coeff.len() == 1 {
                        t.coeff[0].to_string()
                    } else {
                        coeff::render(n, &t.coeff)
                    };
                    let w: Vec<String> = t.word.iter().map(|&g| self.generators[g].render(x)).collect();
                    if w.is_empty() {
                        c
                    } else {
                        format!("{c}·{}", w.join(" "))
                    }
                })
                .collect();
            let body = if body.is_empty() { "0".to_string() } else { body.join(" + ") };
            out.push_str(&format!("{}: {body} = 0\n", r.kind));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentations {
    #[serde(rename = "A")]
    pub a: Presentation,
    #[serde(rename = "B")]
    pub b: Presentation,
    #[serde(rename = "Bplus")]
    pub b_plus: Presentation,
}

struct Builder {
    name: String,
    generators: Vec<Generator>,
    ids: HashMap<Generator, usize>,
    relations: Vec<Relation>,
}

impl Builder {
    fn new(name: &str) -> Self {
        Builder {
            name: name.into(),
            generators: Vec::new(),
            ids: HashMap::new(),
            relations: Vec::new(),
        }
    }

    fn declare(&mut self, g: Generator) {
        self.ids.insert(g.clone(), self.generators.len());
        self.generators.push(g);
    }

    fn id(&self, g: &Generator) -> usize {
        self.ids[g]
    }

    fn relation(&mut self, kind: &str, terms: Vec<Term>) {
        self.relations.push(Relation {
            kind: kind.into(),
            terms,
        });
    }

    fn finish(self) -> Presentation {
        Presentation {
            name: self.name,
            generators: self.generators,
            relations: self.relations,
        }
    }
}

fn scalar(v: Q) -> Vec<Q> {
    vec![v]
}

fn neg(c: &[Q]) -> Vec<Q> {
    c.iter().map(|v| -v).collect()
}

fn term(coeff: Vec<Q>, word: Vec<usize>) -> Term {
    Term { coeff, word }
}

fn face_algebra(x: &DynSet, face: &FaceModel, m: usize) -> Presentation {
    let mx = x.m();
    let mut b = Builder::new("A(w)");
    let paths: Vec<Vec<Path>> = (0..=m).map(|k| Path::all(x, k)).collect();
    for level in &paths {
        for p in level {
            for q in level {
                b.declare(Generator::E { p: p.clone(), q: q.clone() });
            }
        }
    }
    let e = |b: &Builder, p: &Path, q: &Path| b.id(&Generator::E { p: p.clone(), q: q.clone() });

    let mut terms: Vec<Term> = Vec::new();
    for p in &paths[0] {
        for q in &paths[0] {
            terms.push(term(scalar(Q::one()), vec![e(&b, p, q)]));
        }
    }
    terms.push(term(scalar(-Q::one()), vec![]));
    b.relation("unit", terms);

    for la in 0..=m {
        for lb in 0..=m - la {
            for p in &paths[la] {
                for q in &paths[la] {
                    for p2 in &paths[lb] {
                        for q2 in &paths[lb] {
                            let mut terms = vec![term(scalar(Q::one()), vec![e(&b, p, q), e(&b, p2, q2)])];
                            if let (Some(pp), Some(qq)) = (p.concat(p2, x), q.concat(q2, x)) {
                                terms.push(term(scalar(-Q::one()), vec![e(&b, &pp, &qq)]));
                            }
                            b.relation("product", terms);
                        }
                    }
                }
            }
        }
    }

    if m >= 1 {
        let arrow = |i: usize| Path::new(i / mx, vec![i % mx]);
        let pairs = face.pairs();
        for &(a, bb) in pairs {
            for &(c, d) in pairs {
                let mut terms = Vec::new();
                for &(u, v) in pairs {
                    let w = face.weight(u, v, a, bb);
                    if !w.is_zero() {
                        let word = vec![e(&b, &arrow(u), &arrow(c)), e(&b, &arrow(v), &arrow(d))];
                        terms.push(term(scalar(w), word));
                    }
                }
                for &(u, v) in pairs {
                    let w = face.weight(c, d, u, v);
                    if !w.is_zero() {
                        let word = vec![e(&b, &arrow(a), &arrow(u)), e(&b, &arrow(bb), &arrow(v))];
                        terms.push(term(scalar(-w), word));
                    }
                }
                b.relation("face", terms);
            }
        }
    }
    b.finish()
}

fn l_operator_algebra(s: &DybCandidate, with_minus: bool) -> Presentation {
    let x = s.dynset();
    let (n, mx) = (x.n(), x.m());
    let mut b = Builder::new(if with_minus { "B(sigma)" } else { "B+(sigma)" });
    for a in 0..mx {
        for c in 0..mx {
            b.declare(Generator::LPlus { a, b: c });
        }
    }
    if with_minus {
        for a in 0..mx {
            for c in 0..mx {
                b.declare(Generator::LMinus { a, b: c });
            }
        }
    }
    for lambda in 0..n {
        b.declare(Generator::Delta { lambda });
    }
    for lambda in 0..n {
        b.declare(Generator::DeltaBar { lambda });
    }
    let lp = |b: &Builder, a: usize, c: usize| b.id(&Generator::LPlus { a, b: c });
    let lm = |b: &Builder, a: usize, c: usize| b.id(&Generator::LMinus { a, b: c });
    let d = |b: &Builder, lambda: usize| b.id(&Generator::Delta { lambda });
    let db = |b: &Builder, lambda: usize| b.id(&Generator::DeltaBar { lambda });
    let one = coeff::ones(n);

    if with_minus {
        for first_plus in [true, false] {
            for a in 0..mx {
                for c in 0..mx {
                    let mut terms: Vec<Term> = (0..mx)
                        .map(|k| {
                            let word = if first_plus {
                                vec![lp(&b, a, k), lm(&b, k, c)]
                            } else {
                                vec![lm(&b, a, k), lp(&b, k, c)]
                            };
                            term(one.clone(), word)
                        })
                        .collect();
                    if a == c {
                        terms.push(term(neg(&one), vec![]));
                    }
                    b.relation("inverse", terms);
                }
            }
        }
    }

    // L⁺_ab ξ = (a ▷ ξ) L⁺_ab and L⁺_ab ξ̄ = (b ▷ ξ)‾ L⁺_ab, ξ = δ_ν
    for a in 0..mx {
        for c in 0..mx {
            for nu in 0..n {
                let shifted = coeff::from_fn(n, |l, _| x.act(l, a) == nu);
                b.relation(
                    "commute_plus",
                    vec![term(one.clone(), vec![lp(&b, a, c), d(&b, nu)]), term(neg(&shifted), vec![lp(&b, a, c)])],
                );
                let shifted = coeff::from_fn(n, |_, mu| x.act(mu, c) == nu);
                b.relation(
                    "commute_plus",
                    vec![term(one.clone(), vec![lp(&b, a, c), db(&b, nu)]), term(neg(&shifted), vec![lp(&b, a, c)])],
                );
            }
        }
    }

    // L⁻_ab (b ▷ δ_ν) = δ_ν L⁻_ab and L⁻_ab (a ▷ δ_ν)‾ = δ̄_ν L⁻_ab
    if with_minus {
        for a in 0..mx {
            for c in 0..mx {
                for nu in 0..n {
                    let mut terms: Vec<Term> = (0..n)
                        .filter(|&l| x.act(l, c) == nu)
                        .map(|l| term(one.clone(), vec![lm(&b, a, c), d(&b, l)]))
                        .collect();
                    terms.push(term(neg(&coeff::delta(n, nu)), vec![lm(&b, a, c)]));
                    b.relation("commute_minus", terms);
                    let mut terms: Vec<Term> = (0..n)
                        .filter(|&l| x.act(l, a) == nu)
                        .map(|l| term(one.clone(), vec![lm(&b, a, c), db(&b, l)]))
                        .collect();
                    terms.push(term(neg(&coeff::delta_bar(n, nu)), vec![lm(&b, a, c)]));
                    b.relation("commute_minus", terms);
                }
            }
        }
    }

    // Σ σ^{xy}_{ab} L⁺_xc L⁺_yd = Σ (σ^{cd}_{xy})‾ L⁺_ax L⁺_by
    for a in 0..mx {
        for bb in 0..mx {
            for c in 0..mx {
                for dd in 0..mx {
                    let mut terms = Vec::new();
                    for u in 0..mx {
                        for v in 0..mx {
                            let k = coeff::from_fn(n, |l, _| s.get(l, u, v) == (a, bb));
                            if !coeff::is_zero(&k) {
                                terms.push(term(k, vec![lp(&b, u, c), lp(&b, v, dd)]));
                            }
                        }
                    }
                    for u in 0..mx {
                        for v in 0..mx {
                            let k = coeff::from_fn(n, |_, mu| s.get(mu, c, dd) == (u, v));
                            if !coeff::is_zero(&k) {
                                terms.push(term(neg(&k), vec![lp(&b, a, u), lp(&b, bb, v)]));
                            }
                        }
                    }
                    b.relation("rll", terms);
                }
            }
        }
    }

    for lambda in 0..n {
        b.relation(
            "coeff_ring",
            vec![term(one.clone(), vec![d(&b, lambda)]), term(neg(&coeff::delta(n, lambda)), vec![])],
        );
        b.relation(
            "coeff_ring",
            vec![term(one.clone(), vec![db(&b, lambda)]), term(neg(&coeff::delta_bar(n, lambda)), vec![])],
        );
    }
    b.finish()
}

/// `𝔄(w_σ)` with generators up to path length `m`, `𝔅(σ)` and `𝔅⁺(σ)`,
/// every relation instantiated over concrete indices.
pub fn emit_presentations(s: &DybCandidate, m: usize) -> Result<Presentations> {
    check_cap(m)?;
    let st = star_triangular_check(s);
    if !st.passed() {
        return Err(Error::PreconditionFailed("star-triangular check failed".into()));
    }
    let face = face_weights(s)?;
    Ok(Presentations {
        a: face_algebra(s.dynset(), &face, m),
        b: l_operator_algebra(s, true),
        b_plus: l_operator_algebra(s, false),
    })
}
