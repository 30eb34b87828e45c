//! Exhaustive enumeration of ternary operations satisfying the two
//! identities and of Yang-Baxter maps on few colors.
//!
//! Tables are filled cell by cell in lexicographic order with ascending
//! values, so solutions come out in lexicographic order. Every constraint
//! instance is evaluated on the partial table; an instance that reads an
//! unassigned cell is parked on that cell's watch list and re-evaluated
//! once the cell is assigned. Pushes onto watch lists are recorded on a
//! trail and undone on backtrack.
//!
//! Parallel runs split the tree at the first two cells and concatenate the
//! subtree results in prefix order, which reproduces the sequential output.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composite::YbCandidate;
use crate::error::{Error, Result};
use crate::ph::{ternary_classify, TernaryOp};

const UNSET: u8 = u8::MAX;

pub const MAX_TERNARY_N: usize = 4;
pub const MAX_YB_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Unitary,
    Idempotent,
    Invertible,
    VertexCondition,
}

impl std::str::FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "unitary" => Ok(Filter::Unitary),
            "idempotent" => Ok(Filter::Idempotent),
            "invertible" => Ok(Filter::Invertible),
            "vertex_condition" | "vertex-condition" => Ok(Filter::VertexCondition),
            other => Err(Error::Parse {
                path: "--filters".into(),
                position: other.into(),
                message: "expected unitary, idempotent, invertible or vertex_condition".into(),
            }),
        }
    }
}

/// What to enumerate. `size` is `n = |Λ|` for ternary search and `k = |X₀|`
/// for Yang-Baxter search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub size: usize,
    #[serde(default)]
    pub filters: BTreeSet<Filter>,
    #[serde(default)]
    pub symmetry_reduce: bool,
    #[serde(default)]
    pub limit: Option<usize>,
    /// Worker threads; 1 runs on the calling thread. Output does not depend on it.
    #[serde(default = "one")]
    pub jobs: usize,
}

fn one() -> usize {
    1
}

impl SearchSpec {
    pub fn new(size: usize) -> Self {
        SearchSpec {
            size,
            filters: BTreeSet::new(),
            symmetry_reduce: false,
            limit: None,
            jobs: 1,
        }
    }

    pub fn filter(mut self, f: Filter) -> Self {
        self.filters.insert(f);
        self
    }

    pub fn reduced(mut self) -> Self {
        self.symmetry_reduce = true;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub raw: u64,
    pub orbits: u64,
}

enum Eval {
    Holds,
    Fails,
    Blocked(usize),
}

/// A finite constraint problem over a flat table.
trait Problem: Sync {
    fn cells(&self) -> usize;
    fn domain(&self) -> usize;
    fn instances(&self) -> usize;
    fn eval(&self, inst: usize, t: &[u8]) -> Eval;
}

struct Engine<'a, P: Problem> {
    p: &'a P,
    table: Vec<u8>,
    watch: Vec<Vec<u32>>,
    trail: Vec<u32>,
}

impl<'a, P: Problem> Engine<'a, P> {
    fn new(p: &'a P) -> Self {
        let table = vec![UNSET; p.cells()];
        let mut watch = vec![Vec::new(); p.cells()];
        for inst in 0..p.instances() {
            if let Eval::Blocked(c) = p.eval(inst, &table) {
                watch[c].push(inst as u32);
            }
        }
        Engine {
            p,
            table,
            watch,
            trail: Vec::new(),
        }
    }

    /// Assigns `cell := v` and propagates; false on a violated instance.
    /// On success the caller must eventually call `unassign` with the mark.
    fn assign(&mut self, cell: usize, v: u8) -> (bool, usize) {
        self.table[cell] = v;
        let mark = self.trail.len();
        let list = std::mem::take(&mut self.watch[cell]);
        let mut ok = true;
        for &inst in &list {
            match self.p.eval(inst as usize, &self.table) {
                Eval::Holds => {}
                Eval::Fails => {
                    ok = false;
                    break;
                }
                Eval::Blocked(c) => {
                    debug_assert!(c > cell);
                    self.watch[c].push(inst);
                    self.trail.push(c as u32);
                }
            }
        }
        self.watch[cell] = list;
        (ok, mark)
    }

    fn unassign(&mut self, cell: usize, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("trail") as usize;
            self.watch[c].pop();
        }
        self.table[cell] = UNSET;
    }

    /// Depth-first from `depth`, calling `leaf` on complete tables until it
    /// returns false. Returns false if stopped early.
    fn dfs(&mut self, depth: usize, leaf: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        if depth == self.table.len() {
            return leaf(&self.table);
        }
        for v in 0..self.p.domain() as u8 {
            let (ok, mark) = self.assign(depth, v);
            let go_on = !ok || self.dfs(depth + 1, leaf);
            self.unassign(depth, mark);
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Runs the subtree below a fixed prefix.
    fn run_prefix(&mut self, prefix: &[u8], leaf: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        let mut marks = Vec::with_capacity(prefix.len());
        let mut ok = true;
        for (cell, &v) in prefix.iter().enumerate() {
            let (good, mark) = self.assign(cell, v);
            marks.push(mark);
            if !good {
                ok = false;
                break;
            }
        }
        let go_on = if ok { self.dfs(prefix.len(), leaf) } else { true };
        for (cell, mark) in marks.into_iter().enumerate().rev() {
            self.unassign(cell, mark);
        }
        go_on
    }
}

/// Enumerates all complete tables accepted by `keep`, in lexicographic order.
fn solve<P: Problem>(p: &P, jobs: usize, limit: Option<usize>, keep: &(dyn Fn(&[u8]) -> bool + Sync)) -> Vec<Vec<u8>> {
    if limit == Some(0) {
        return Vec::new();
    }
    let split = p.cells().min(2);
    let d = p.domain();
    let prefixes: Vec<Vec<u8>> = (0..d.pow(split as u32))
        .map(|mut code| {
            let mut v = vec![0u8; split];
            for i in (0..split).rev() {
                v[i] = (code % d) as u8;
                code /= d;
            }
            v
        })
        .collect();
    if jobs <= 1 {
        let mut out = Vec::new();
        let mut engine = Engine::new(p);
        let mut leaf = |t: &[u8]| {
            if keep(t) {
                out.push(t.to_vec());
            }
            limit.map_or(true, |l| out.len() < l)
        };
        for prefix in &prefixes {
            if !engine.run_prefix(prefix, &mut leaf) {
                break;
            }
        }
        return out;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let parts: Vec<Vec<Vec<u8>>> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut engine = Engine::new(p);
                let mut out = Vec::new();
                let mut leaf = |t: &[u8]| {
                    if keep(t) {
                        out.push(t.to_vec());
                    }
                    limit.map_or(true, |l| out.len() < l)
                };
                engine.run_prefix(prefix, &mut leaf);
                out
            })
            .collect()
    });
    let mut out: Vec<Vec<u8>> = parts.into_iter().flatten().collect();
    if let Some(l) = limit {
        out.truncate(l);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

struct TernaryProblem {
    n: usize,
    unitary: bool,
    idempotent: bool,
}

impl TernaryProblem {
    fn core(&self) -> usize {
        2 * self.n.pow(4)
    }
    fn extra(&self) -> usize {
        self.n.pow(3)
    }
}

macro_rules! look {
    ($t:expr, $cell:expr) => {{
        let c = $cell;
        let v = $t[c];
        if v == UNSET {
            return Eval::Blocked(c);
        }
        v as usize
    }};
}

impl Problem for TernaryProblem {
    fn cells(&self) -> usize {
        self.n.pow(3)
    }
    fn domain(&self) -> usize {
        self.n
    }
    fn instances(&self) -> usize {
        self.core() + if self.unitary { self.extra() } else { 0 } + if self.idempotent { self.extra() } else { 0 }
    }
    fn eval(&self, inst: usize, t: &[u8]) -> Eval {
        let n = self.n;
        let cell = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        if inst < self.core() {
            let which = inst % 2;
            let mut k = inst / 2;
            let d = k % n;
            k /= n;
            let c = k % n;
            k /= n;
            let b = k % n;
            let a = k / n;
            let abc = look!(t, cell(a, b, c));
            let bcd = look!(t, cell(b, c, d));
            let abc_cd = look!(t, cell(abc, c, d));
            let ok = if which == 0 {
                let lhs = look!(t, cell(a, abc, abc_cd));
                let rhs = look!(t, cell(a, b, bcd));
                lhs == rhs
            } else {
                let ab_bcd = look!(t, cell(a, b, bcd));
                abc_cd == look!(t, cell(ab_bcd, bcd, d))
            };
            return if ok { Eval::Holds } else { Eval::Fails };
        }
        let mut k = inst - self.core();
        let want_unitary = self.unitary && k < self.extra();
        if self.unitary && k >= self.extra() {
            k -= self.extra();
        }
        let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
        let abc = look!(t, cell(a, b, c));
        let twice = look!(t, cell(a, abc, c));
        let ok = if want_unitary { twice == b } else { twice == abc };
        if ok {
            Eval::Holds
        } else {
            Eval::Fails
        }
    }
}

/// Lexicographic comparison of `relabel(t)` against `t`, cell by cell.
fn relabeled_is_smaller(cells: usize, orig: impl Fn(usize) -> usize, moved: impl Fn(usize) -> usize) -> bool {
    for i in 0..cells {
        let (o, m) = (orig(i), moved(i));
        if m != o {
            return m < o;
        }
    }
    false
}

fn ternary_keep(n: usize, filters: &BTreeSet<Filter>, reduce: bool, perms: &[Vec<usize>], t: &[u8]) -> bool {
    let needs_post = filters.contains(&Filter::Invertible) || filters.contains(&Filter::VertexCondition);
    if needs_post {
        let op = TernaryOp::from_raw(n, t.iter().map(|&v| v as usize).collect());
        if filters.contains(&Filter::Invertible) && !ternary_classify(&op).invertible {
            return false;
        }
        if filters.contains(&Filter::VertexCondition) && !ternary_vertex_condition(&op) {
            return false;
        }
    }
    !reduce || ternary_is_canonical(t, n, perms)
}

fn ternary_is_canonical(t: &[u8], n: usize, perms: &[Vec<usize>]) -> bool {
    perms.iter().skip(1).all(|perm| {
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        !relabeled_is_smaller(
            n * n * n,
            |i| t[i] as usize,
            |i| {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                perm[t[(inv[a] * n + inv[b]) * n + inv[c]] as usize]
            },
        )
    })
}

/// `⟨a, b, c⟩` independent of `a`: the solution is then of vertex type.
pub fn ternary_vertex_condition(t: &TernaryOp) -> bool {
    let n = t.n();
    (1..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.get(a, b, c) == t.get(0, b, c))))
}

fn check_size(what: &str, size: usize, max: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if size > max {
        return Err(Error::SizeLimit(format!("{what} search supports sizes up to {max}, got {size}")));
    }
    Ok(())
}

fn run_ternary(spec: &SearchSpec, reduce: bool) -> Result<Vec<Vec<u8>>> {
    check_size("ternary", spec.size, MAX_TERNARY_N)?;
    let n = spec.size;
    let p = TernaryProblem {
        n,
        unitary: spec.filters.contains(&Filter::Unitary),
        idempotent: spec.filters.contains(&Filter::Idempotent),
    };
    let perms = permutations(n);
    let filters = spec.filters.clone();
    let keep = move |t: &[u8]| ternary_keep(n, &filters, reduce, &perms, t);
    Ok(solve(&p, spec.jobs, spec.limit, &keep))
}

/// Ternary operations on `n` vertices satisfying both identities and the
/// filters, in lexicographic order of the flat table.
pub fn search_ternary(spec: &SearchSpec) -> Result<Vec<TernaryOp>> {
    let n = spec.size;
    Ok(run_ternary(spec, spec.symmetry_reduce)?
        .into_iter()
        .map(|t| TernaryOp::from_raw(n, t.into_iter().map(usize::from).collect()))
        .collect())
}

/// The lexicographically least relabeling of `t`.
pub fn canonical_ternary(t: &TernaryOp) -> TernaryOp {
    permutations(t.n())
        .iter()
        .map(|p| t.relabel(p))
        .min()
        .expect("at least the identity")
}

struct YbProblem {
    k: usize,
    unitary: bool,
    idempotent: bool,
}

impl Problem for YbProblem {
    fn cells(&self) -> usize {
        self.k * self.k
    }
    fn domain(&self) -> usize {
        self.k * self.k
    }
    fn instances(&self) -> usize {
        let k = self.k;
        k.pow(3) + if self.unitary { k * k } else { 0 } + if self.idempotent { k * k } else { 0 }
    }
    fn eval(&self, inst: usize, t: &[u8]) -> Eval {
        let k = self.k;
        macro_rules! sigma {
            ($i:expr, $j:expr) => {{
                let v = look!(t, $i * k + $j);
                (v / k, v % k)
            }};
        }
        if inst < k.pow(3) {
            let (i, j, l) = (inst / (k * k), (inst / k) % k, inst % k);
            // (σ×id)(id×σ)(σ×id)
            let (a1, b1) = sigma!(i, j);
            let (b2, c2) = sigma!(b1, l);
            let (a3, b3) = sigma!(a1, b2);
            // (id×σ)(σ×id)(id×σ)
            let (y1, z1) = sigma!(j, l);
            let (x2, y2) = sigma!(i, y1);
            let (y3, z3) = sigma!(y2, z1);
            return if (a3, b3, c2) == (x2, y3, z3) {
                Eval::Holds
            } else {
                Eval::Fails
            };
        }
        let mut p = inst - k.pow(3);
        let want_unitary = self.unitary && p < k * k;
        if self.unitary && p >= k * k {
            p -= k * k;
        }
        let (i, j) = (p / k, p % k);
        let (a, b) = sigma!(i, j);
        let twice = sigma!(a, b);
        let ok = if want_unitary { twice == (i, j) } else { twice == (a, b) };
        if ok {
            Eval::Holds
        } else {
            Eval::Fails
        }
    }
}

fn yb_is_canonical(t: &[u8], k: usize, perms: &[Vec<usize>]) -> bool {
    perms.iter().skip(1).all(|perm| {
        let mut inv = vec![0; k];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        !relabeled_is_smaller(
            k * k,
            |c| t[c] as usize,
            |c| {
                let (i, j) = (c / k, c % k);
                let v = t[inv[i] * k + inv[j]] as usize;
                perm[v / k] * k + perm[v % k]
            },
        )
    })
}

fn run_yb(spec: &SearchSpec, reduce: bool) -> Result<Vec<Vec<u8>>> {
    check_size("Yang-Baxter", spec.size, MAX_YB_K)?;
    let k = spec.size;
    let p = YbProblem {
        k,
        unitary: spec.filters.contains(&Filter::Unitary),
        idempotent: spec.filters.contains(&Filter::Idempotent),
    };
    let perms = permutations(k);
    let invertible = spec.filters.contains(&Filter::Invertible);
    // every Yang-Baxter map is of vertex type, so that filter is vacuous here
    let keep = move |t: &[u8]| {
        if invertible {
            let mut seen = vec![false; k * k];
            if t.iter().any(|&v| std::mem::replace(&mut seen[v as usize], true)) {
                return false;
            }
        }
        !reduce || yb_is_canonical(t, k, &perms)
    };
    Ok(solve(&p, spec.jobs, spec.limit, &keep))
}

/// Yang-Baxter maps on `k` colors, in lexicographic order of the code
/// table `L·k + R`.
pub fn search_yb(spec: &SearchSpec) -> Result<Vec<YbCandidate>> {
    let k = spec.size;
    Ok(run_yb(spec, spec.symmetry_reduce)?
        .into_iter()
        .map(|t| YbCandidate::from_codes(k, &t.into_iter().map(usize::from).collect::<Vec<_>>()))
        .collect())
}

fn census_of(all: &[Vec<u8>], canonical: impl Fn(&[u8]) -> bool) -> Census {
    Census {
        raw: all.len() as u64,
        orbits: all.iter().filter(|t| canonical(t)).count() as u64,
    }
}

/// Raw and relabeling-orbit counts from a single unreduced run. Ignores
/// `limit` and `symmetry_reduce`.
pub fn census_ternary(spec: &SearchSpec) -> Result<Census> {
    let spec = SearchSpec {
        limit: None,
        ..spec.clone()
    };
    let all = run_ternary(&spec, false)?;
    let perms = permutations(spec.size);
    Ok(census_of(&all, |t| ternary_is_canonical(t, spec.size, &perms)))
}

pub fn census_yb(spec: &SearchSpec) -> Result<Census> {
    let spec = SearchSpec {
        limit: None,
        ..spec.clone()
    };
    let all = run_yb(&spec, false)?;
    let perms = permutations(spec.size);
    Ok(census_of(&all, |t| yb_is_canonical(t, spec.size, &perms)))
}
