//! Aggregated rigidity verdicts for one graph.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::{Field, FieldKind};
use crate::graph::{recognize_balanced_join, vertex_connectivity_at_least, Edge, Graph, JoinStructure};
use crate::quadric::{qrm, qrm_width, QuadricError};
use crate::rigidity::{
    certificate_from, max_stress_matrix_rank, nontrivial_flexes, redundant_edges, rigidity_matrix, target_rank,
    trial_rng, Configuration, GgrCertificate, GgrVerdict, RigidityError, DEFAULT_STRESS_SAMPLES, DEFAULT_TRIALS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error("QRM says glr = {qrm}, rigidity matrix says glr = {rm}")]
    EngineDisagreement { rm: bool, qrm: bool },
}

impl ReportError {
    /// Disagreements between trials or engines, as opposed to bad input.
    pub fn is_disagreement(&self) -> bool {
        matches!(
            self,
            ReportError::EngineDisagreement { .. }
                | ReportError::Rigidity(RigidityError::TrialDisagreement { .. })
                | ReportError::Quadric(QuadricError::Rigidity(RigidityError::TrialDisagreement { .. }))
        )
    }
}

/// Which engine decides local rigidity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Rm,
    Qrm,
    #[default]
    Both,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rm" => Ok(Engine::Rm),
            "qrm" => Ok(Engine::Qrm),
            "both" => Ok(Engine::Both),
            other => Err(format!("unknown engine `{other}` (expected rm, qrm or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub seed: u64,
    pub trials: usize,
    pub ggr_samples: usize,
    pub engine: Engine,
    pub witnesses: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            seed: 0,
            trials: DEFAULT_TRIALS,
            ggr_samples: DEFAULT_STRESS_SAMPLES,
            engine: Engine::Both,
            witnesses: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrmSummary {
    pub join: JoinStructure,
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
    pub glr: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    pub stresses: Vec<Value>,
    pub flexes: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: usize,
    pub n: usize,
    pub e: usize,
    pub rank: usize,
    pub target_rank: usize,
    pub glr: bool,
    pub flex_dim_mod_trivial: usize,
    pub stress_dim: usize,
    pub redundant_edges: Vec<[usize; 2]>,
    pub grr: bool,
    pub connectivity_ok: bool,
    pub ggr_certificate: GgrCertificate,
    pub hendrickson_pass: bool,
    pub counterexample_consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qrm: Option<QrmSummary>,
    pub field: FieldKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
}

impl RigidityReport {
    pub fn redundant_edge_list(&self) -> Vec<Edge> {
        self.redundant_edges.iter().map(|&[i, j]| (i, j)).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("graph: {name}\n"));
        }
        out.push_str(&format!("d = {}, n = {}, e = {}\n", self.d, self.n, self.e));
        out.push_str(&format!("rank {} / target {}\n", self.rank, self.target_rank));
        out.push_str(&format!("glr: {}\n", self.glr));
        out.push_str(&format!("flexes mod trivial: {}\n", self.flex_dim_mod_trivial));
        out.push_str(&format!("stress dim: {}\n", self.stress_dim));
        out.push_str(&format!("redundant edges: {} of {}\n", self.redundant_edges.len(), self.e));
        out.push_str(&format!("grr: {}\n", self.grr));
        out.push_str(&format!("({}+1)-connected: {}\n", self.d, self.connectivity_ok));
        out.push_str(&format!(
            "ggr certificate: {} (max stress matrix rank {}, threshold {})\n",
            self.ggr_certificate.verdict, self.ggr_certificate.max_stress_matrix_rank, self.ggr_certificate.threshold
        ));
        out.push_str(&format!("hendrickson conditions: {}\n", self.hendrickson_pass));
        out.push_str(&format!("counterexample-consistent: {}\n", self.counterexample_consistent));
        if let Some(q) = &self.qrm {
            let (a, b) = q.join.sizes();
            out.push_str(&format!(
                "qrm: join {a}+{b}, {} extraneous, {}x{} rank {}, glr {}\n",
                q.join.extraneous().len(),
                q.rows,
                q.columns,
                q.rank,
                q.glr
            ));
        }
        for notice in &self.notices {
            out.push_str(&format!("note: {notice}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TrialOutcome {
    rank: usize,
    flex_dim: usize,
    stress_dim: usize,
    redundant: Option<Vec<Edge>>,
    qrm_rank: Option<usize>,
    max_stress_rank: usize,
}

fn agree<T: PartialEq + std::fmt::Debug>(quantity: &str, values: impl Iterator<Item = T>) -> Result<T, RigidityError> {
    let values: Vec<T> = values.collect();
    let mut iter = values.iter();
    let first = iter.next().ok_or(RigidityError::NoTrials)?;
    if iter.all(|v| v == first) {
        Ok(values.into_iter().next().expect("non-empty"))
    } else {
        Err(RigidityError::TrialDisagreement {
            quantity: quantity.to_string(),
            values: values.iter().map(|v| format!("{v:?}")).collect(),
        })
    }
}

/// Runs every check of Hendrickson's necessary conditions plus the randomized
/// global rigidity certificate. Trial `t` draws from `trial_rng(seed, t)`.
pub fn hendrickson_report<F: Field>(g: &Graph, d: usize, opts: &ReportOptions) -> Result<RigidityReport, ReportError> {
    if d == 0 {
        return Err(RigidityError::ZeroDimension.into());
    }
    if opts.trials == 0 {
        return Err(RigidityError::NoTrials.into());
    }
    let n = g.vertex_count();
    let target = target_rank(n, d);
    let mut notices = Vec::new();
    let join = match opts.engine {
        Engine::Rm => None,
        _ => {
            let found = recognize_balanced_join(g, d);
            if found.is_none() {
                notices.push(format!(
                    "not a balanced joined graph in dimension {d}; using the rigidity matrix only"
                ));
            }
            found
        }
    };

    let mut outcomes = Vec::with_capacity(opts.trials);
    let mut witnesses = None;
    for t in 0..opts.trials {
        let mut rng = trial_rng(opts.seed, t);
        let p = Configuration::<F>::random(n, d, &mut rng)?;
        let m = rigidity_matrix(g, &p)?;
        let rank = m.rank();
        let stresses = m.cokernel_basis();
        let redundant = if rank == target { Some(redundant_edges(g, &p)?) } else { None };
        let qrm_rank = match &join {
            Some(js) => Some(qrm(js, &p)?.rank()),
            None => None,
        };
        let max_stress_rank = if rank == target && n >= d + 2 {
            max_stress_matrix_rank(g, &p, opts.ggr_samples, &mut rng)?
        } else {
            0
        };
        if opts.witnesses && t == 0 {
            let flexes = nontrivial_flexes(g, &p)?;
            witnesses = Some(Witnesses {
                stresses: stresses.iter().map(|w| Value::Array(w.iter().map(F::to_json).collect())).collect(),
                flexes: flexes.iter().map(|v| Value::Array(v.iter().map(F::to_json).collect())).collect(),
            });
        }
        outcomes.push(TrialOutcome {
            rank,
            flex_dim: m.cols() - rank - p.trivial_motion_rank(),
            stress_dim: stresses.len(),
            redundant,
            qrm_rank,
            max_stress_rank,
        });
    }

    let rank = agree("rigidity matrix rank", outcomes.iter().map(|o| o.rank))?;
    let flex_dim = agree("flex dimension", outcomes.iter().map(|o| o.flex_dim))?;
    let stress_dim = agree("stress dimension", outcomes.iter().map(|o| o.stress_dim))?;
    let redundant = agree("redundant edge set", outcomes.iter().map(|o| o.redundant.clone()))?;
    let rm_glr = rank == target;

    let qrm_summary = match join {
        Some(js) => {
            let qrank = agree("QRM rank", outcomes.iter().map(|o| o.qrm_rank.expect("computed with a join")))?;
            let qglr = qrank == qrm_width(d);
            if opts.engine == Engine::Both && qglr != rm_glr {
                return Err(ReportError::EngineDisagreement { rm: rm_glr, qrm: qglr });
            }
            let rows = n + js.extraneous().len();
            Some(QrmSummary { join: js, rows, columns: qrm_width(d), rank: qrank, glr: qglr })
        }
        None => None,
    };
    let glr = match (&qrm_summary, opts.engine) {
        (Some(q), Engine::Qrm) => q.glr,
        _ => rm_glr,
    };

    let redundant = redundant.unwrap_or_default();
    let grr = glr && redundant.len() == g.edge_count();
    let connectivity_ok = vertex_connectivity_at_least(g, d + 1);
    let max_rank = outcomes.iter().map(|o| o.max_stress_rank).max().unwrap_or(0);
    let ggr_certificate = certificate_from(n, d, n >= d + 2 && glr, max_rank);
    let hendrickson_pass = connectivity_ok && grr;

    Ok(RigidityReport {
        name: g.name().map(str::to_string),
        d,
        n,
        e: g.edge_count(),
        rank,
        target_rank: target,
        glr,
        flex_dim_mod_trivial: flex_dim,
        stress_dim,
        redundant_edges: redundant.iter().map(|&(i, j)| [i, j]).collect(),
        grr,
        connectivity_ok,
        counterexample_consistent: hendrickson_pass && ggr_certificate.verdict == GgrVerdict::NotGgrProbable,
        ggr_certificate,
        hendrickson_pass,
        qrm: qrm_summary,
        field: F::KIND,
        modulus: F::modulus(),
        trials: opts.trials,
        seed: opts.seed,
        notices,
        witnesses,
    })
}
