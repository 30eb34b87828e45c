//! Deterministic plain-text rendering of reports.

use crate::bialgebra::{PhiReport, StarTriangularReport};
use crate::composite::CompositeFlags;
use crate::dyb::{CheckReport, Flags};
use crate::ph::TernaryFlags;
use crate::search::Census;

pub trait Render {
    fn render(&self) -> String;
}

pub fn render_report<R: Render + ?Sized>(r: &R) -> String {
    r.render()
}

fn tuple(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Render for CheckReport {
    fn render(&self) -> String {
        match &self.witness {
            None if self.passed => format!("OK ({} instances)\n", self.counts),
            Some(w) => format!(
                "FAILED: {} violated at {} ({} instances)\n",
                self.identity,
                tuple(w),
                self.counts
            ),
            None => format!("FAILED: {} ({} instances)\n", self.identity, self.counts),
        }
    }
}

impl Render for Census {
    fn render(&self) -> String {
        format!("raw: {}\norbits: {}\n", self.raw, self.orbits)
    }
}

impl Render for Flags {
    fn render(&self) -> String {
        format!(
            "unitary: {}\nidempotent: {}\ninvertible: {}\nvertex type: {}\n",
            yes(self.unitary),
            yes(self.idempotent),
            yes(self.invertible),
            yes(self.vertex_type)
        )
    }
}

impl Render for TernaryFlags {
    fn render(&self) -> String {
        format!(
            "unitary: {}\nidempotent: {}\ninvertible: {}\n",
            yes(self.unitary),
            yes(self.idempotent),
            yes(self.invertible)
        )
    }
}

impl Render for CompositeFlags {
    fn render(&self) -> String {
        format!(
            "unitary: {}\nidempotent: {}\ninvertible: {}\n",
            yes(self.unitary),
            yes(self.idempotent),
            yes(self.invertible)
        )
    }
}

impl Render for StarTriangularReport {
    fn render(&self) -> String {
        format!(
            "sigma and action bijective: {}\ninvertible w: {}\nbraid w: {}\n",
            yes(self.shibukawa_condition),
            yes(self.invertible_w),
            yes(self.braid_w)
        )
    }
}

impl Render for PhiReport {
    fn render(&self) -> String {
        let mut out = format!("path cap {}\n", self.path_cap);
        for c in &self.checks {
            match &c.witness {
                None => out.push_str(&format!("{}: OK ({} instances)\n", c.name, c.counts)),
                Some(w) => out.push_str(&format!("{}: FAILED at {w} ({} instances)\n", c.name, c.counts)),
            }
        }
        out
    }
}
