//! Named built-in examples shared by tests, the CLI and the demo.

use crate::composite::{QuasigroupFamily, YbCandidate};
use crate::dynset::DynSet;
use crate::ph::{LeftQuasigroup, TernaryOp};

/// `F_G`: ℤ/2 acting on itself by translation, `λ ⇀ x = λ + x mod 2`.
pub fn f_g() -> DynSet {
    DynSet::from_fn(2, 2, |l, x| (l + x) % 2).expect("in range")
}

/// The terminal object `K_Λ` on `n` vertices.
pub fn k(n: usize) -> DynSet {
    DynSet::terminal(n).expect("n >= 1")
}

/// `⟨a, b, c⟩ = a − b + c mod n`.
pub fn group_ternary(n: usize) -> TernaryOp {
    TernaryOp::from_fn(n, |a, b, c| (a + n - b + c) % n)
}

/// `max` on the chain `0 < 1 < … < n−1`.
pub fn chain_max_op(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect()
}

/// `⟨a, b, c⟩ = max(b, c)` on the chain.
pub fn chain_max_ternary(n: usize) -> TernaryOp {
    TernaryOp::from_fn(n, |_, b, c| b.max(c))
}

/// Meet semilattice on three elements: bottom 0 below two atoms 1 and 2.
pub fn fan_op() -> Vec<Vec<usize>> {
    vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]
}

pub fn fan_ternary() -> TernaryOp {
    let op = fan_op();
    TernaryOp::from_fn(3, |_, b, c| op[b][c])
}

/// The flip `(i, j) ↦ (j, i)`.
pub fn flip(k: usize) -> YbCandidate {
    YbCandidate::from_fn(k, |i, j| (j, i)).expect("in range")
}

/// `(i, j) ↦ (i + 1 mod 2, j)`: not a Yang-Baxter map.
pub fn shift2() -> YbCandidate {
    YbCandidate::from_fn(2, |i, j| ((i + 1) % 2, j)).expect("in range")
}

/// Two colors over ℤ/2: `a *₀ x = a + x`, `a *₁ x = a + x + 1`.
pub fn z2_family() -> QuasigroupFamily {
    QuasigroupFamily::new(vec![
        LeftQuasigroup::cyclic(2),
        LeftQuasigroup::from_fn(2, |a, x| (a + x + 1) % 2).expect("latin"),
    ])
    .expect("same size")
}
