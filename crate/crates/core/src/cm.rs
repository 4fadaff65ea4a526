//! Cohen-Macaulay modules over string algebras.
//!
//! Gentle algebras use the saturated-cycle description (the modules `M(u_i)`).
//! Other string algebras are decided by stable syzygy periodicity, with Ext
//! vanishing as a cross-check. The fixed-point tests compare `Ω^{m+1} τ N`
//! with `N` over enumerated strings.

use serde::Serialize;

use crate::classify::{critical_paths, saturated_cycles};
use crate::error::{CmError, QuiverError};
use crate::exec::Execution;
use crate::field::Scalar;
use crate::quiver::{BoundQuiver, VertexId};
use crate::repr::{Dimension, Oracle};
use crate::strings::{ModuleSum, StringAlgebra, StringWord};

/// Stamped on every report that lists fixed points or enumerated CM modules.
pub const BAND_CAVEAT: &str = "band modules are excluded; enumerated sets cover string modules only";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmMethod {
    KalckSaturatedCycles,
    Periodicity,
    ExtVanishing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum CmVerdict {
    Projective,
    Cm { method: CmMethod, period: Option<usize> },
    NotCm { ext_degree: usize },
    Undetermined { cutoff: usize },
}

impl CmVerdict {
    pub fn is_cm(&self) -> bool {
        matches!(self, CmVerdict::Projective | CmVerdict::Cm { .. })
    }
}

/// The modules `M(u_i)` over all saturated cycles, canonical and deduplicated.
pub fn cm_modules_gentle(alg: &StringAlgebra) -> Result<Vec<StringWord>, QuiverError> {
    if !alg.is_gentle() {
        return Err(QuiverError::NotGentle(format!("{}: use cm_test for string algebras", alg.bound_quiver().name)));
    }
    let q = alg.quiver();
    let mut out = Vec::new();
    for cycle in saturated_cycles(alg.bound_quiver()) {
        for (u, _) in alg.uv_data(&cycle)? {
            out.push(u.canonical(q));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Smallest `k` in `1..=cutoff` with `Ω^k M ≅ M` stably.
pub fn stable_period(alg: &StringAlgebra, word: &StringWord, cutoff: usize) -> Option<usize> {
    let target = alg.single(word);
    let mut cur = target.without_projectives();
    for k in 1..=cutoff {
        cur = alg.syzygy(&cur, true);
        if cur == target {
            return Some(k);
        }
        if cur.is_empty() {
            return None;
        }
    }
    None
}

/// Decides whether `M(word)` is CM over an algebra of Gorenstein dimension `d`.
pub fn cm_test<F: Scalar>(
    o: &Oracle<F>,
    alg: &StringAlgebra,
    d: usize,
    word: &StringWord,
    cutoff: usize,
) -> Result<CmVerdict, CmError> {
    if alg.projective_vertex(word).is_some() {
        return Ok(CmVerdict::Projective);
    }
    let rep = o.rep_of_string(word);
    if let Some(period) = stable_period(alg, word, cutoff) {
        for i in 1..=d.max(4) {
            if o.ext_dim(&rep, i, cutoff.max(i))? != 0 {
                return Err(CmError::Disagreement(format!(
                    "{}: syzygy period {period} but Ext^{i} is nonzero",
                    word.display(alg.quiver())
                )));
            }
        }
        return Ok(CmVerdict::Cm { method: CmMethod::Periodicity, period: Some(period) });
    }
    if cutoff < d {
        return Ok(CmVerdict::Undetermined { cutoff });
    }
    for i in 1..=d {
        if o.ext_dim(&rep, i, cutoff)? != 0 {
            return Ok(CmVerdict::NotCm { ext_degree: i });
        }
    }
    Ok(CmVerdict::Cm { method: CmMethod::ExtVanishing, period: None })
}

/// `τ` of a string module: the surgery when defined, the oracle otherwise.
pub fn tau<F: Scalar>(o: &Oracle<F>, alg: &StringAlgebra, word: &StringWord) -> Result<ModuleSum, CmError> {
    match alg.tau_combinatorial(word) {
        Some(t) => Ok(t),
        None => Ok(o.string_tau(word)?),
    }
}

/// Whether `Ω^{m+1} τ N ≅ N`, with syzygies taken stably.
pub fn formula_check<F: Scalar>(o: &Oracle<F>, alg: &StringAlgebra, word: &StringWord, m: usize) -> Result<bool, CmError> {
    let t = tau(o, alg, word)?;
    Ok(alg.syzygy_power(&t, m + 1) == alg.single(word))
}

/// Canonical strings with at most `max_letters` letters fixed by `Ω^{m+1} τ`.
pub fn fixed_point_set<F: Scalar>(
    o: &Oracle<F>,
    alg: &StringAlgebra,
    m: usize,
    max_letters: usize,
    exec: Execution,
) -> Result<Vec<StringWord>, CmError> {
    let words = alg.enumerate_strings(max_letters);
    let checked = exec.map(words, |w| formula_check(o, alg, &w, m).map(|ok| (w, ok)));
    let mut out = Vec::new();
    for r in checked {
        let (w, ok) = r?;
        if ok {
            out.push(w);
        }
    }
    out.sort();
    Ok(out)
}

/// Non-projective canonical strings up to `max_letters` letters that pass
/// `cm_test`.
pub fn cm_set_enumerated<F: Scalar>(
    o: &Oracle<F>,
    alg: &StringAlgebra,
    d: usize,
    max_letters: usize,
    cutoff: usize,
    exec: Execution,
) -> Result<Vec<StringWord>, CmError> {
    let words: Vec<StringWord> =
        alg.enumerate_strings(max_letters).into_iter().filter(|w| alg.projective_vertex(w).is_none()).collect();
    let checked = exec.map(words, |w| cm_test(o, alg, d, &w, cutoff).map(|v| (w, v)));
    let mut out = Vec::new();
    for r in checked {
        let (w, v) = r?;
        match v {
            CmVerdict::Undetermined { cutoff } => {
                return Err(CmError::UnresolvedGorenstein(format!("{} undetermined at cutoff {cutoff}", w.display(alg.quiver()))))
            }
            v if v.is_cm() => out.push(w),
            _ => {}
        }
    }
    out.sort();
    Ok(out)
}

/// The oracle Gorenstein dimension, required finite.
pub fn oracle_gorenstein<F: Scalar>(o: &Oracle<F>, cutoff: usize) -> Result<usize, CmError> {
    match o.gorenstein_dimension(cutoff)? {
        Dimension::Finite(d) => Ok(d),
        other => Err(CmError::UnresolvedGorenstein(other.describe())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalTag {
    Cm,
    ProjDimBelowD,
    Projective,
    /// Neither of the above. Only possible for non-gentle string algebras.
    Outside,
}

/// Tags each indecomposable summand of `rad P(x)`. For gentle algebras every
/// summand is CM or of projective dimension at most `d - 1`, and a summand
/// outside both classes is an error.
pub fn radical_trichotomy<F: Scalar>(
    o: &Oracle<F>,
    alg: &StringAlgebra,
    x: VertexId,
    d: usize,
    cutoff: usize,
) -> Result<Vec<(StringWord, RadicalTag)>, CmError> {
    let rad = o.syzygy(&o.simple_rep(x));
    let sum = o.decompose(&rad)?;
    let mut out = Vec::new();
    for e in sum.entries() {
        let tag = if e.projective.is_some() {
            RadicalTag::Projective
        } else if cm_test(o, alg, d, &e.word, cutoff)?.is_cm() {
            RadicalTag::Cm
        } else {
            match o.proj_dim(&o.rep_of_string(&e.word), cutoff)? {
                Dimension::Finite(p) if p < d => RadicalTag::ProjDimBelowD,
                _ if alg.is_gentle() => return Err(CmError::TrichotomyViolated(e.word.display(alg.quiver()))),
                _ => RadicalTag::Outside,
            }
        };
        out.push((e.word.clone(), tag));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Check {
    fn ok() -> Self {
        Check { holds: true, witness: None }
    }

    fn fail(witness: String) -> Self {
        Check { holds: false, witness: Some(witness) }
    }
}

/// Structural conditions satisfied by gentle 2-CY tilted algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCyReport {
    pub gorenstein_at_most_one: Check,
    pub relations_on_saturated_cycles: Check,
    pub cycles_are_triangles_or_loops: Check,
}

impl TwoCyReport {
    pub fn all(&self) -> bool {
        self.gorenstein_at_most_one.holds && self.relations_on_saturated_cycles.holds && self.cycles_are_triangles_or_loops.holds
    }
}

/// Checks the three necessary conditions on a gentle bound quiver. The
/// Gorenstein bound uses the longest critical path.
pub fn verify_2cy_necessary(bq: &BoundQuiver) -> Result<TwoCyReport, QuiverError> {
    let q = bq.quiver();
    let crit = critical_paths(bq)?;
    let gorenstein_at_most_one = match crit.paths.iter().find(|p| p.len() > 1) {
        Some(p) => Check::fail(format!("critical path {} of length {}", p.display(q), p.len())),
        None => Check::ok(),
    };
    let cycles = saturated_cycles(bq);
    let on_cycle = |r: &[crate::quiver::ArrowId]| {
        cycles.iter().any(|c| {
            let n = c.len();
            (0..n).any(|i| c.arrow(i) == r[0] && c.arrow(i + 1) == r[1])
        })
    };
    let relations_on_saturated_cycles = match bq.relations().iter().find(|r| r.arrows.len() != 2 || !on_cycle(&r.arrows)) {
        Some(r) => Check::fail(r.display(q)),
        None => Check::ok(),
    };
    let bad = cycles.iter().find(|c| {
        if c.is_loop() {
            return false;
        }
        if c.len() != 3 {
            return true;
        }
        let mut vs: Vec<VertexId> = (0..3).map(|i| q.source(c.arrow(i))).collect();
        vs.sort();
        vs.dedup();
        vs.len() != 3
    });
    let cycles_are_triangles_or_loops = match bad {
        Some(c) => Check::fail(c.display(bq)),
        None => Check::ok(),
    };
    Ok(TwoCyReport { gorenstein_at_most_one, relations_on_saturated_cycles, cycles_are_triangles_or_loops })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub module: String,
    pub m: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub value: usize,
    pub provenance: &'static str,
    /// Longest critical path, for gentle inputs.
    pub combinatorial: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CMReport {
    pub algebra: String,
    pub gorenstein: GorensteinReport,
    pub method: CmMethod,
    pub cm_modules: Vec<String>,
    pub formula: Vec<FormulaResult>,
    pub fixed_points: Option<Vec<String>>,
    pub fixed_points_equal_cm: Option<bool>,
    pub bands_found: usize,
    pub caveat: &'static str,
}

/// Options for [`cm_report`].
#[derive(Clone, Copy, Debug)]
pub struct CmOptions {
    pub m: usize,
    pub max_letters: usize,
    pub cutoff: usize,
    pub fixed_points: bool,
    pub exec: Execution,
}

pub fn cm_report<F: Scalar>(o: &Oracle<F>, alg: &StringAlgebra, opts: CmOptions) -> Result<CMReport, CmError> {
    let q = alg.quiver();
    let d = oracle_gorenstein(o, opts.cutoff)?;
    let (words, method, combinatorial) = if alg.is_gentle() {
        let words = cm_modules_gentle(alg)?;
        for w in &words {
            let v = cm_test(o, alg, d, w, opts.cutoff)?;
            if !v.is_cm() {
                return Err(CmError::Disagreement(format!("{} from a saturated cycle: {v:?}", w.display(q))));
            }
        }
        (words, CmMethod::KalckSaturatedCycles, Some(critical_paths(alg.bound_quiver())?.n_lambda))
    } else {
        (cm_set_enumerated(o, alg, d, opts.max_letters, opts.cutoff, opts.exec)?, CmMethod::Periodicity, None)
    };
    let mut formula = Vec::new();
    for w in &words {
        formula.push(FormulaResult { module: w.display(q), m: opts.m, holds: formula_check(o, alg, w, opts.m)? });
    }
    let (fixed_points, fixed_points_equal_cm) = if opts.fixed_points {
        let fp = fixed_point_set(o, alg, opts.m, opts.max_letters, opts.exec)?;
        let in_range: Vec<&StringWord> = words.iter().filter(|w| w.len() <= opts.max_letters).collect();
        let equal = fp.iter().collect::<Vec<_>>() == in_range;
        (Some(fp.iter().map(|w| w.display(q)).collect()), Some(equal))
    } else {
        (None, None)
    };
    Ok(CMReport {
        algebra: alg.bound_quiver().name.clone(),
        gorenstein: GorensteinReport { value: d, provenance: "oracle", combinatorial },
        method,
        cm_modules: words.iter().map(|w| w.display(q)).collect(),
        formula,
        fixed_points,
        fixed_points_equal_cm,
        bands_found: alg.detect_bands(opts.max_letters.min(8)).len(),
        caveat: BAND_CAVEAT,
    })
}
