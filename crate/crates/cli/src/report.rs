//! The JSON report and its prose rendering.

use serde::Serialize;

use gentle_core::blocks::BlockWitness;
use gentle_core::cm::CMReport;
use gentle_core::potential::JacobianVerdict;
use gentle_core::repr::Dimension;
use gentle_core::suite::SuiteReport;
use gentle_core::surface::{AngulationReport, Model};
use gentle_core::ClassificationReport;

#[derive(Clone, Debug, Serialize)]
pub struct Options {
    pub m: usize,
    pub char: u64,
    pub field: String,
    /// Resolved syzygy cutoff; the default is `2 dim Λ`.
    pub cutoff: Option<usize>,
    pub max_letters: usize,
    pub seed: u64,
    pub trials: usize,
    pub execution: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Dimensions {
    pub gorenstein: Dimension,
    /// Longest critical path, for gentle algebras.
    pub gorenstein_combinatorial: Option<usize>,
    pub global: Dimension,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockCounts {
    #[serde(rename = "I")]
    pub one: usize,
    #[serde(rename = "II")]
    pub two: usize,
    #[serde(rename = "Loop")]
    pub loops: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksSummary {
    pub decomposable: bool,
    pub counts: Option<BlockCounts>,
    pub decomposition: Option<Vec<String>>,
    pub witness: Option<BlockWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialSummary {
    pub source: String,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianEntry {
    #[serde(flatten)]
    pub verdict: JacobianVerdict,
    /// Refusal to build a field for the Jacobian workflow, if any.
    pub field_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AngulationSummary {
    pub model: Model,
    pub arcs: Vec<String>,
    pub faces: usize,
    pub properties: AngulationReport,
    pub bound_quiver: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub options: Options,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<Dimensions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturated_cycles: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm: Option<CMReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<Vec<JacobianEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angulation: Option<AngulationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteReport>,
    pub verifications: Vec<Verification>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, input: Option<String>, options: Options) -> Report {
        Report {
            command: command.to_string(),
            input,
            options,
            warnings: Vec::new(),
            algebra: None,
            classification: None,
            dimensions: None,
            saturated_cycles: None,
            cm: None,
            blocks: None,
            potential: None,
            jacobian: None,
            angulation: None,
            suite: None,
            verifications: Vec::new(),
            ok: true,
        }
    }

    pub fn verify(&mut self, name: &str, passed: bool) {
        self.verifications.push(Verification { name: name.to_string(), passed });
        self.ok &= passed;
    }

    pub fn prose(&self) -> String {
        let mut out = Vec::new();
        let o = &self.options;
        out.push(format!("{}{}", self.command, self.input.as_ref().map(|i| format!(" {i}")).unwrap_or_default()));
        out.push(format!(
            "  field {} | m {} | cutoff {} | max letters {} | seed {} | trials {} | {}",
            o.field,
            o.m,
            o.cutoff.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            o.max_letters,
            o.seed,
            o.trials,
            o.execution
        ));
        for w in &self.warnings {
            out.push(format!("  warning: {w}"));
        }
        if let Some(a) = &self.algebra {
            let dim = a.dimension.map(|d| d.to_string()).unwrap_or_else(|| "infinite".into());
            out.push(format!("  {}: {} vertices, {} arrows, {} relations, dim {dim}", a.name, a.vertices, a.arrows, a.relations));
        }
        if let Some(c) = &self.classification {
            let kind = if c.is_gentle {
                "gentle"
            } else if c.is_string {
                "string, not gentle"
            } else {
                "not a string algebra"
            };
            out.push(format!("  classification: {kind}"));
            for v in &c.violations {
                out.push(format!("    {:?}: {}", v.condition, v.witness));
            }
        }
        if let Some(d) = &self.dimensions {
            out.push(format!("  Gorenstein dimension: {}", d.gorenstein.describe()));
            if let Some(c) = d.gorenstein_combinatorial {
                out.push(format!("  longest critical path: {c}"));
            }
            out.push(format!("  global dimension: {}", d.global.describe()));
        }
        if let Some(cs) = &self.saturated_cycles {
            out.push(format!("  saturated cycles: {}", if cs.is_empty() { "none".into() } else { cs.join(" ") }));
        }
        if let Some(cm) = &self.cm {
            out.push(format!("  CM modules ({:?}): {{{}}}", cm.method, cm.cm_modules.join(", ")));
            if let Some(fp) = &cm.fixed_points {
                out.push(format!("  fixed points of Omega^(m+1) tau: {{{}}}", fp.join(", ")));
            }
            out.push(format!("  note: {}", cm.caveat));
        }
        if let Some(b) = &self.blocks {
            match (&b.counts, &b.witness) {
                (Some(c), _) => out.push(format!("  blocks: {} x I, {} x II, {} x Loop", c.one, c.two, c.loops)),
                (None, Some(w)) => out.push(format!("  no block decomposition: {} ({})", w.rule, w.detail)),
                _ => {}
            }
        }
        if let Some(p) = &self.potential {
            out.push(format!("  potential from {}: {}", p.source, p.terms.join(" + ")));
        }
        for j in self.jacobian.iter().flatten() {
            out.push(format!("  Jacobian ideal equals I over char {}: {}", j.verdict.characteristic, j.verdict.holds));
            for w in &j.verdict.witnesses {
                out.push(format!("    {w}"));
            }
            if let Some(e) = &j.field_error {
                out.push(format!("    {e}"));
            }
        }
        if let Some(a) = &self.angulation {
            out.push(format!("  {} arcs, {} faces", a.arcs.len(), a.faces));
            let p = &a.properties;
            for (name, f) in [
                ("gentle", &p.gentle),
                ("saturated cycles of length m+2", &p.saturated_cycles_have_length_m_plus_2),
                ("at most m-1 relations in a row off cycles", &p.relation_chains_outside_cycles_at_most_m_minus_1),
                ("Gorenstein dimension at most m", &p.gorenstein_at_most_m),
            ] {
                out.push(format!("  {name}: {}{}", f.holds, f.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()));
            }
        }
        if let Some(s) = &self.suite {
            out.push(format!("  suite {}: {}/{} passed", s.suite, s.passed, s.count));
            for f in s.failures.iter().take(20) {
                out.push(format!("    seed {} {}: {}", f.seed, f.check, f.detail));
            }
        }
        for v in &self.verifications {
            out.push(format!("  [{}] {}", if v.passed { "pass" } else { "FAIL" }, v.name));
        }
        out.join("\n")
    }
}
