//! End-to-end classification of a representation: construction, finiteness
//! criteria, rescaling, congruence test, and the serializable report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::braid::{
    modular_scalings, rowell_tuba_classify, scale_to_modular, scale_to_modular_with,
    tw_construct_capped, BraidRep, Finiteness, RepSpec, RtClassification,
};
use crate::closure::{enumerate_group, DEFAULT_CLOSURE_CAP};
use crate::congruence::{congruence_test_with, to_modular_rep, TestOptions, Verdict};
use crate::cyclotomic::{RootFraction, DEFAULT_MAX_CONDUCTOR};
use crate::error::Result;
use crate::linear::{CycMatrix, DEFAULT_ORDER_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThetaPolicy {
    /// Root of `x^6 = conj(c)` with the smallest `k/n`.
    #[default]
    Auto,
    Explicit(RootFraction),
    /// One report per each of the six roots.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub order_cap: u64,
    pub conductor_cap: u64,
    pub closure_cap: usize,
    /// Report every failing word, not only the first.
    pub all_failing: bool,
    /// Enumerate the image even when its finiteness is already known.
    pub image_order: bool,
    pub timings: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            conductor_cap: DEFAULT_MAX_CONDUCTOR,
            closure_cap: DEFAULT_CLOSURE_CAP,
            all_failing: false,
            image_order: false,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VerdictReport {
    Congruence {
        level: u64,
    },
    NonCongruence {
        witness: String,
        witness_label: String,
        witness_word: String,
        evaluated_matrix: Vec<Vec<String>>,
    },
    NotApplicable {
        reason: String,
    },
}

impl VerdictReport {
    pub fn from_verdict(v: &Verdict) -> VerdictReport {
        match v {
            Verdict::Congruence { level } => VerdictReport::Congruence { level: *level },
            Verdict::NonCongruence { witness, evaluated } => VerdictReport::NonCongruence {
                witness: witness.expr.to_string(),
                witness_label: witness.label.clone(),
                witness_word: witness.word.to_string(),
                evaluated_matrix: evaluated.to_string_rows(),
            },
            Verdict::NotApplicable { reason } => VerdictReport::NotApplicable {
                reason: reason.clone(),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VerdictReport::Congruence { .. } => "congruence",
            VerdictReport::NonCongruence { .. } => "non_congruence",
            VerdictReport::NotApplicable { .. } => "not_applicable",
        }
    }

    pub fn is_definitive(&self) -> bool {
        !matches!(self, VerdictReport::NotApplicable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingWord {
    pub witness: String,
    pub evaluated_matrix: Vec<Vec<String>>,
}

/// The JSON report. `spec` is the input; `spectrum` is the eigenvalues of
/// `rho(T)` after rescaling by `theta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub spec: RepSpec,
    pub theta: Option<RootFraction>,
    pub po: u64,
    pub spectrum: Vec<RootFraction>,
    pub classification: RtClassification,
    pub glevel: Option<u64>,
    pub verdict: VerdictReport,
    pub image_order: Option<u64>,
    /// The image was not certified finite, so the verdict relies on the
    /// congruence criterion outside its finite-image hypothesis.
    pub conditional: bool,
    pub checked_words: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_words: Option<Vec<FailingWord>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn level(&self) -> Option<u64> {
        match self.verdict {
            VerdictReport::Congruence { level } => Some(level),
            _ => None,
        }
    }
}

struct Timer {
    on: bool,
    start: Instant,
    stages: BTreeMap<String, f64>,
}

impl Timer {
    fn new(on: bool) -> Timer {
        Timer {
            on,
            start: Instant::now(),
            stages: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        if self.on {
            let ms = (self.start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            self.stages.insert(stage.to_string(), ms);
            self.start = Instant::now();
        }
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.on.then_some(self.stages)
    }
}

/// Construct the Tuba–Wenzl representation for `spec` and classify it.
pub fn full_pipeline(
    spec: &RepSpec,
    policy: ThetaPolicy,
    limits: &Limits,
) -> Result<PipelineReport> {
    let rep = tw_construct_capped(spec, limits.conductor_cap)?;
    pipeline_for_rep(&rep, policy, limits)
}

/// One report per scaling root of unity.
pub fn full_pipeline_all(spec: &RepSpec, limits: &Limits) -> Result<Vec<PipelineReport>> {
    let rep = tw_construct_capped(spec, limits.conductor_cap)?;
    pipeline_all_for_rep(&rep, limits)
}

pub fn pipeline_all_for_rep(rep: &BraidRep, limits: &Limits) -> Result<Vec<PipelineReport>> {
    let thetas = modular_scalings(rep)?;
    thetas
        .into_iter()
        .map(|t| pipeline_for_rep(rep, ThetaPolicy::Explicit(t), limits))
        .collect()
}

/// Run the pipeline on explicit generator images. `ThetaPolicy::All` is
/// treated as `Auto`; use [`pipeline_all_for_rep`] for all six.
pub fn pipeline_for_rep(
    rep: &BraidRep,
    policy: ThetaPolicy,
    limits: &Limits,
) -> Result<PipelineReport> {
    let mut timer = Timer::new(limits.timings);
    let classification = rowell_tuba_classify(&rep.spec);
    timer.lap("classify");
    let mut report = PipelineReport {
        name: None,
        spec: rep.spec.clone(),
        theta: None,
        po: classification.projective_order,
        spectrum: rep.spec.eigs.clone(),
        classification,
        glevel: None,
        verdict: VerdictReport::NotApplicable {
            reason: String::new(),
        },
        image_order: None,
        conditional: false,
        checked_words: 0,
        failing_words: None,
        notes: Vec::new(),
        timings_ms: None,
    };
    if classification.finiteness == Finiteness::Infinite {
        report.verdict = VerdictReport::NotApplicable {
            reason: format!(
                "image is infinite ({})",
                match classification.clause {
                    crate::braid::RtClause::RepeatedEigenvalue => "repeated eigenvalue",
                    crate::braid::RtClause::DimTwoProjectiveOrder =>
                        "dimension 2 with projective order outside 2..=5",
                    _ => "finiteness criterion",
                }
            ),
        };
        report.timings_ms = timer.finish();
        return Ok(report);
    }

    let (scaled, theta) = match policy {
        ThetaPolicy::Auto | ThetaPolicy::All => scale_to_modular(rep)?,
        ThetaPolicy::Explicit(t) => (scale_to_modular_with(rep, t)?, t),
    };
    report.theta = Some(theta);
    report.spectrum = scaled.spec.eigs.clone();
    let modular = to_modular_rep(&scaled)?;
    timer.lap("scale");

    let opts = TestOptions {
        order_cap: limits.order_cap,
        all_failing: limits.all_failing,
    };
    let result = congruence_test_with(&modular, opts)?;
    timer.lap("congruence");
    report.glevel = result.glevel;
    report.checked_words = result.checked_words;
    report.verdict = VerdictReport::from_verdict(&result.verdict);
    report.failing_words = result.failing_words.map(|ws| {
        ws.into_iter()
            .map(|(w, m)| FailingWord {
                witness: w.expr.to_string(),
                evaluated_matrix: m.to_string_rows(),
            })
            .collect()
    });

    let undecided = classification.finiteness == Finiteness::Indeterminate;
    if (undecided || limits.image_order) && result.verdict.is_definitive() {
        let closure = enumerate_group(&[modular.x.clone(), modular.y.clone()], limits.closure_cap)?;
        timer.lap("closure");
        if closure.finite {
            report.image_order = Some(closure.order as u64);
        } else if undecided {
            report.conditional = true;
            report.notes.push(format!(
                "image not certified finite within {} elements",
                limits.closure_cap
            ));
        }
    }
    if matches!(report.verdict, VerdictReport::Congruence { .. }) && !(2..=5).contains(&report.po) {
        report.notes.push(
            "projective order outside 2..=5; level claim rests on the congruence test alone".into(),
        );
    }
    report.timings_ms = timer.finish();
    Ok(report)
}

/// Images of `T` and `U` after rescaling, for callers that want the matrices.
pub fn modular_matrices(rep: &BraidRep, theta: RootFraction) -> Result<(CycMatrix, CycMatrix)> {
    let m = to_modular_rep(&scale_to_modular_with(rep, theta)?)?;
    Ok((m.x, m.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(e: &[(i64, u64)]) -> RepSpec {
        RepSpec::new(
            e.iter()
                .map(|&(k, n)| RootFraction::new(k, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sign_rep() {
        let r = full_pipeline(
            &spec(&[(0, 1), (1, 2)]),
            ThetaPolicy::Auto,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, VerdictReport::Congruence { level: 2 });
        assert_eq!(r.theta, Some(RootFraction::ONE));
        assert_eq!(r.po, 2);
    }

    #[test]
    fn infinite_image() {
        let r = full_pipeline(
            &spec(&[(1, 7), (2, 7)]),
            ThetaPolicy::Auto,
            &Limits::default(),
        )
        .unwrap();
        assert!(matches!(r.verdict, VerdictReport::NotApplicable { .. }));
        assert_eq!(r.theta, None);
        assert_eq!(r.po, 7);
    }

    #[test]
    fn noncongruence_family_spectrum() {
        let r = full_pipeline(
            &spec(&[(1, 9), (11, 18), (5, 18)]),
            ThetaPolicy::Auto,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(r.verdict.kind(), "non_congruence");
        assert_eq!(r.glevel, Some(18));
    }

    #[test]
    fn all_scalings() {
        let rs = full_pipeline_all(&spec(&[(1, 4), (3, 4)]), &Limits::default()).unwrap();
        assert_eq!(rs.len(), 6);
        assert!(rs.iter().all(|r| r.verdict.is_definitive()));
    }

    #[test]
    fn explicit_theta_must_factor() {
        let s = spec(&[(1, 4), (3, 4)]);
        let bad = ThetaPolicy::Explicit(RootFraction::ONE);
        assert!(full_pipeline(&s, bad, &Limits::default()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = full_pipeline(
            &spec(&[(1, 9), (11, 18), (7, 9)]),
            ThetaPolicy::Auto,
            &Limits::default(),
        )
        .unwrap();
        let json = r.to_json();
        let back: PipelineReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert!(json.contains("\"timings_ms\": null"));
    }

    #[test]
    fn timings_only_when_requested() {
        let limits = Limits {
            timings: true,
            ..Limits::default()
        };
        let r = full_pipeline(&spec(&[(0, 1), (1, 2)]), ThetaPolicy::Auto, &limits).unwrap();
        assert!(r.timings_ms.unwrap().contains_key("congruence"));
    }
}
