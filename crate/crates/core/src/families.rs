//! Generators for the known graphs that are (d+1)-connected and generically
//! redundantly rigid yet not generically globally rigid, and a pipeline that
//! checks the properties claimed for each family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::field::Field;
use crate::graph::{
    attach_chain, complete, complete_bipartite, disjoint_union, empty_graph, four_chain, join, recognize_balanced_join,
    vertex_connectivity_at_least, Graph, GraphError, JoinStructure,
};
use crate::quadric::qrm_width;
use crate::report::{hendrickson_report, ReportError, ReportOptions, RigidityReport};
use crate::rigidity::{binomial, is_grr, trial_rng, GgrVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid {kind} parameters: {reason}")]
    Invalid { kind: &'static str, reason: String },
    #[error("unknown host `{0}` (expected K<n>)")]
    Host(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

pub type Result<T, E = FamilyError> = std::result::Result<T, E>;

/// A host graph, written `K<n>` for the complete graph on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Host {
    pub n: usize,
}

impl Host {
    pub fn complete(n: usize) -> Self {
        Host { n }
    }

    pub fn graph(&self) -> Graph {
        complete(self.n)
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.n)
    }
}

impl FromStr for Host {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('K')
            .or_else(|| s.strip_prefix('k'))
            .and_then(|rest| rest.parse().ok())
            .map(Host::complete)
            .ok_or_else(|| FamilyError::Host(s.to_string()))
    }
}

impl Serialize for Host {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Host {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A family member, serialized as `{"kind": ..., "params": {...}}`.
///
/// Chain hosts default to `K_{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `K_{a,b}` with `a, b >= d + 2` and `a + b = C(d+2, 2)`.
    Connelly { a: usize, b: usize, d: usize },
    /// `(K_{1,d+1} ∪ E_{a-d-2}) + E_b` with `a > b >= d + 1`,
    /// `a + b = C(d+1, 2) + 1` and `d > 3`.
    PartialConing { a: usize, b: usize, d: usize },
    /// `C_{2,i,2d-2-i,d-1} ⋈ host` with `2 < i < d - 1`.
    ChainAttachment {
        d: usize,
        i: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<Host>,
    },
    /// `C_{x,i,v-i,d+1-x} ⋈ host` with `v = x(d-x+1)` and `x < i < v + x - d - 1`.
    ChainAttachmentGeneral {
        d: usize,
        x: usize,
        i: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<Host>,
    },
    /// `(K_2 ∪ E_{2d-4}) + (K_{d-1} ∪ E_2)` with `d >= 3`.
    HGraph { d: usize },
    /// An arbitrary 4-chain attached to a host; no property is claimed.
    FourChainAttachment {
        x: [usize; 4],
        d: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        host: Option<Host>,
    },
}

/// `v(d, x) = x (d - x + 1)`, the middle-layer total of chains that attach to
/// `d + 1` vertices.
pub fn chain_middle_total(d: usize, x: usize) -> usize {
    x * (d + 1).saturating_sub(x)
}

fn invalid(kind: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::Invalid { kind, reason: reason.into() }
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Connelly { .. } => "connelly",
            FamilySpec::PartialConing { .. } => "partial_coning",
            FamilySpec::ChainAttachment { .. } => "chain_attachment",
            FamilySpec::ChainAttachmentGeneral { .. } => "chain_attachment_general",
            FamilySpec::HGraph { .. } => "h_graph",
            FamilySpec::FourChainAttachment { .. } => "four_chain_attachment",
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            FamilySpec::Connelly { d, .. }
            | FamilySpec::PartialConing { d, .. }
            | FamilySpec::ChainAttachment { d, .. }
            | FamilySpec::ChainAttachmentGeneral { d, .. }
            | FamilySpec::HGraph { d }
            | FamilySpec::FourChainAttachment { d, .. } => d,
        }
    }

    /// The 4-chain layer sizes, for chain kinds.
    pub fn chain_layers(&self) -> Option<[usize; 4]> {
        match *self {
            FamilySpec::ChainAttachment { d, i, .. } => Some([2, i, 2 * d - 2 - i, d - 1]),
            FamilySpec::ChainAttachmentGeneral { d, x, i, .. } => {
                Some([x, i, chain_middle_total(d, x) - i, d + 1 - x])
            }
            FamilySpec::FourChainAttachment { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Host graph for chain kinds: the given one, else `K_{d+1}`.
    pub fn host(&self) -> Option<Host> {
        match *self {
            FamilySpec::ChainAttachment { d, host, .. }
            | FamilySpec::ChainAttachmentGeneral { d, host, .. }
            | FamilySpec::FourChainAttachment { d, host, .. } => Some(host.unwrap_or(Host::complete(d + 1))),
            _ => None,
        }
    }

    /// Checks the family's parameter constraints, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind();
        let d = self.dim();
        if d == 0 {
            return Err(invalid(kind, "d >= 1 violated (d = 0)"));
        }
        match *self {
            FamilySpec::Connelly { a, b, d } => {
                if a < d + 2 {
                    return Err(invalid(kind, format!("a >= d+2 violated (a = {a}, d+2 = {})", d + 2)));
                }
                if b < d + 2 {
                    return Err(invalid(kind, format!("b >= d+2 violated (b = {b}, d+2 = {})", d + 2)));
                }
                let c = binomial(d + 2, 2);
                if a + b != c {
                    return Err(invalid(kind, format!("a+b = C(d+2,2) violated (a+b = {}, C(d+2,2) = {c})", a + b)));
                }
            }
            FamilySpec::PartialConing { a, b, d } => {
                if d <= 3 {
                    return Err(invalid(kind, format!("d > 3 violated (d = {d})")));
                }
                if a <= b {
                    return Err(invalid(kind, format!("a > b violated (a = {a}, b = {b})")));
                }
                if b < d + 1 {
                    return Err(invalid(kind, format!("b >= d+1 violated (b = {b}, d+1 = {})", d + 1)));
                }
                let c = binomial(d + 1, 2) + 1;
                if a + b != c {
                    return Err(invalid(kind, format!("a+b = C(d+1,2)+1 violated (a+b = {}, C(d+1,2)+1 = {c})", a + b)));
                }
            }
            FamilySpec::ChainAttachment { d, i, .. } => {
                if i <= 2 {
                    return Err(invalid(kind, format!("2 < i violated (i = {i})")));
                }
                if i + 1 >= d {
                    return Err(invalid(kind, format!("i < d-1 violated (i = {i}, d-1 = {})", d as isize - 1)));
                }
            }
            FamilySpec::ChainAttachmentGeneral { d, x, i, .. } => {
                if x == 0 || x > d {
                    return Err(invalid(kind, format!("1 <= x <= d violated (x = {x}, d = {d})")));
                }
                if i <= x {
                    return Err(invalid(kind, format!("x < i violated (x = {x}, i = {i})")));
                }
                let bound = (chain_middle_total(d, x) + x) as isize - d as isize - 1;
                if i as isize >= bound {
                    return Err(invalid(kind, format!("i < v(d,x)+x-d-1 violated (i = {i}, v(d,x)+x-d-1 = {bound})")));
                }
            }
            FamilySpec::HGraph { d } => {
                if d < 3 {
                    return Err(invalid(kind, format!("d >= 3 violated (d = {d})")));
                }
            }
            FamilySpec::FourChainAttachment { x, .. } => {
                if x.contains(&0) {
                    return Err(invalid(kind, "every layer must be non-empty"));
                }
            }
        }
        if let (Some(host), Some(x)) = (self.host(), self.chain_layers()) {
            let need = (x[0] + x[3]).max(d + 1);
            if host.n < need {
                return Err(invalid(kind, format!("host has {} vertices, needs at least {need}", host.n)));
            }
        }
        Ok(())
    }

    /// Validates and constructs the graph.
    pub fn build(&self) -> Result<FamilyInstance> {
        self.validate()?;
        let (graph, join) = match *self {
            FamilySpec::Connelly { a, b, .. } => {
                let (g, js) = join(&empty_graph(a), &empty_graph(b));
                (g.with_name(format!("K{a},{b}")), Some(js))
            }
            FamilySpec::PartialConing { a, b, d } => {
                let (g, js) = partial_coning_graph(a, b, d);
                (g, Some(js))
            }
            FamilySpec::HGraph { d } => {
                let (g, js) = h_graph(d);
                (g, Some(js))
            }
            _ => {
                let x = self.chain_layers().expect("chain kind");
                let host = self.host().expect("chain kind");
                let g = attach_chain(&four_chain(x), &host.graph())?;
                let js = recognize_balanced_join(&g, self.dim());
                (g, js)
            }
        };
        Ok(FamilyInstance { spec: self.clone(), graph, join })
    }
}

/// A constructed family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub graph: Graph,
    /// Balanced join structure, when the graph has one.
    pub join: Option<JoinStructure>,
}

/// `K_{a,b}`; fails unless `a, b >= d + 2` and `a + b = C(d+2, 2)`.
pub fn connelly_graph(a: usize, b: usize, d: usize) -> Result<Graph> {
    Ok(FamilySpec::Connelly { a, b, d }.build()?.graph)
}

/// Partial coning of `K_{a-1,b}` over the `b` class and `d + 1` vertices of
/// the other, as the join `(K_{1,d+1} ∪ E_{a-d-2}) + E_b`. Vertex 0 is the
/// cone vertex, `1..=d+1` its leaves, then the rest of the left class, then
/// the right class. Parameters are not checked.
pub fn partial_coning_graph(a: usize, b: usize, d: usize) -> (Graph, JoinStructure) {
    let mut left = Graph::new(a);
    for leaf in 1..=d + 1 {
        left.add_edge(0, leaf).expect("star fits in the left class");
    }
    let (g, js) = join(&left, &empty_graph(b));
    (g.with_name(format!("PC{a},{b},{d}")), js)
}

/// `H_d = (K_2 ∪ E_{2d-4}) + (K_{d-1} ∪ E_2)`; `d >= 3` is not checked.
pub fn h_graph(d: usize) -> (Graph, JoinStructure) {
    let left = disjoint_union(&complete(2), &empty_graph(2 * d - 4));
    let right = disjoint_union(&complete(d - 1), &empty_graph(2));
    let (g, js) = join(&left, &right);
    (g.with_name(format!("H{d}")), js)
}

/// `C_{2,i,2d-2-i,d-1} ⋈ host`.
pub fn chain_attachment(d: usize, i: usize, host: Host) -> Result<Graph> {
    Ok(FamilySpec::ChainAttachment { d, i, host: Some(host) }.build()?.graph)
}

/// `C_{x,i,v(d,x)-i,d+1-x} ⋈ host`.
pub fn chain_attachment_general(d: usize, x: usize, i: usize, host: Host) -> Result<Graph> {
    Ok(FamilySpec::ChainAttachmentGeneral { d, x, i, host: Some(host) }.build()?.graph)
}

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: FamilySpec,
}

/// Named instances.
pub fn presets() -> Vec<Preset> {
    vec![
        Preset {
            name: "k55",
            description: "K_{5,5} in R^3",
            spec: FamilySpec::Connelly { a: 5, b: 5, d: 3 },
        },
        Preset {
            name: "k69",
            description: "K_{6,9} in R^4",
            spec: FamilySpec::Connelly { a: 6, b: 9, d: 4 },
        },
        Preset {
            name: "k78",
            description: "K_{7,8} in R^4",
            spec: FamilySpec::Connelly { a: 7, b: 8, d: 4 },
        },
        Preset {
            name: "partial-coning-10-6",
            description: "(K_{1,6} ∪ E_3) + E_6 in R^5",
            spec: FamilySpec::PartialConing { a: 10, b: 6, d: 5 },
        },
        Preset {
            name: "partial-coning-9-7",
            description: "(K_{1,6} ∪ E_2) + E_7 in R^5",
            spec: FamilySpec::PartialConing { a: 9, b: 7, d: 5 },
        },
        Preset {
            name: "c2354-k6",
            description: "C_{2,3,5,4} attached to K_6 in R^5",
            spec: FamilySpec::ChainAttachment { d: 5, i: 3, host: Some(Host::complete(6)) },
        },
        Preset {
            name: "c2354-k7",
            description: "C_{2,3,5,4} attached to K_7 in R^5",
            spec: FamilySpec::ChainAttachment { d: 5, i: 3, host: Some(Host::complete(7)) },
        },
        Preset {
            name: "h5",
            description: "(K_2 ∪ E_6) + (K_4 ∪ E_2) in R^5",
            spec: FamilySpec::HGraph { d: 5 },
        },
        Preset {
            name: "c3355-outlier",
            description: "C_{3,3,5,5} attached to K_8 in R^6",
            spec: FamilySpec::FourChainAttachment { x: [3, 3, 5, 5], d: 6, host: Some(Host::complete(8)) },
        },
    ]
}

pub fn preset(name: &str) -> Result<FamilySpec> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .map(|p| p.spec)
        .ok_or_else(|| FamilyError::UnknownPreset(name.to_string()))
}

/// One checked property of a family member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Claim {
    fn new(name: impl Into<String>, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        Claim { name: name.into(), expected, actual, pass }
    }

    /// `PASS name` or `FAIL name (expected .., got ..)`.
    pub fn verdict_line(&self) -> String {
        if self.pass {
            format!("PASS {}", self.name)
        } else {
            format!("FAIL {} (expected {}, got {})", self.name, self.expected, self.actual)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub spec: FamilySpec,
    pub report: RigidityReport,
    pub claims: Vec<Claim>,
}

impl Verification {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn counterexample_claims(report: &RigidityReport, claims: &mut Vec<Claim>) {
    claims.push(Claim::new("hendrickson_pass", json!(true), json!(report.hendrickson_pass)));
    claims.push(Claim::new(
        "ggr_verdict",
        json!(GgrVerdict::NotGgrProbable),
        json!(report.ggr_certificate.verdict),
    ));
}

/// Builds the family member, runs the full report on it, and checks the
/// properties known for its family. A failed property is a `pass: false`
/// claim, not an error.
pub fn verify_family<F: Field>(spec: &FamilySpec, opts: &ReportOptions) -> Result<Verification> {
    let instance = spec.build()?;
    let d = spec.dim();
    let report = hendrickson_report::<F>(&instance.graph, d, opts)?;
    let mut claims = Vec::new();
    match *spec {
        FamilySpec::Connelly { a, b, d } => {
            claims.push(Claim::new("glr", json!(true), json!(report.glr)));
            claims.push(Claim::new("stress_dim", json!((a - d - 1) * (b - d - 1)), json!(report.stress_dim)));
            counterexample_claims(&report, &mut claims);
        }
        FamilySpec::PartialConing { .. } => {
            let qrank = report.qrm.as_ref().map(|q| q.rank);
            claims.push(Claim::new("qrm_rank", json!(qrm_width(d)), json!(qrank)));
            claims.push(Claim::new("glr", json!(true), json!(report.glr)));
            counterexample_claims(&report, &mut claims);
        }
        FamilySpec::HGraph { .. } => {
            let q = report.qrm.as_ref();
            claims.push(Claim::new("qrm_rows", json!(qrm_width(d)), json!(q.map(|q| q.rows))));
            claims.push(Claim::new("qrm_rank", json!(qrm_width(d)), json!(q.map(|q| q.rank))));
            claims.push(Claim::new("glr", json!(true), json!(report.glr)));
        }
        FamilySpec::ChainAttachment { i, .. } | FamilySpec::ChainAttachmentGeneral { i, .. } => {
            claims.push(Claim::new("glr", json!(true), json!(report.glr)));
            let layers = spec.chain_layers().expect("chain kind");
            // the dimension count is known only for the first family, on K_{d+1}
            let canonical = attach_chain(&four_chain(layers), &complete(d + 1))?;
            let canonical_report = hendrickson_report::<F>(&canonical, d, opts)?;
            if matches!(spec, FamilySpec::ChainAttachment { .. }) {
                claims.push(Claim::new(
                    "stress_dim_on_k_d+1",
                    json!((i - 2) * (d - i - 1)),
                    json!(canonical_report.stress_dim),
                ));
            }
            let non_redundant = canonical.edge_count() - canonical_report.redundant_edges.len();
            let extraneous = recognize_balanced_join(&canonical, d).map(|js| js.extraneous().len());
            claims.push(Claim::new("non_redundant_on_k_d+1", json!(extraneous), json!(Some(non_redundant))));
            // the counterexample claim needs a redundantly rigid, (d+1)-connected host
            let host = spec.host().expect("chain kind").graph();
            let mut rng = trial_rng(opts.seed, opts.trials);
            if vertex_connectivity_at_least(&host, d + 1)
                && is_grr::<F>(&host, d, &mut rng, opts.trials).map_err(ReportError::from)?
            {
                counterexample_claims(&report, &mut claims);
            }
        }
        FamilySpec::FourChainAttachment { .. } => {}
    }
    Ok(Verification { spec: spec.clone(), report, claims })
}

/// `K_{a,b}` grids used by the bipartite checks: balanced pairs `a <= b` with
/// `a + b <= C(d+2, 2)`.
pub fn balanced_bipartite_grid(d: usize) -> Vec<(usize, usize)> {
    let c = binomial(d + 2, 2);
    let mut out = Vec::new();
    for a in d + 1..=c {
        for b in a..=c.saturating_sub(a) {
            if a + b <= c {
                out.push((a, b));
            }
        }
    }
    out
}

/// `K_{a,b}` for a grid entry.
pub fn grid_graph(a: usize, b: usize) -> Graph {
    complete_bipartite(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connelly_validation() {
        assert!(connelly_graph(5, 5, 3).is_ok());
        assert_eq!(connelly_graph(6, 9, 4).unwrap().edge_count(), 54);
        let err = connelly_graph(5, 4, 3).unwrap_err();
        assert!(err.to_string().contains("b >= d+2"), "{err}");
        assert!(connelly_graph(5, 6, 3).unwrap_err().to_string().contains("C(d+2,2)"));
    }

    #[test]
    fn partial_coning_counts() {
        let inst = FamilySpec::PartialConing { a: 10, b: 6, d: 5 }.build().unwrap();
        assert_eq!(inst.graph.vertex_count(), 16);
        assert_eq!(inst.graph.edge_count(), 66);
        let js = inst.join.unwrap();
        assert_eq!(js.extraneous(), &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]);
        assert_eq!(js.sizes(), (10, 6));
        js.validate(&inst.graph).unwrap();
        for spec in [
            FamilySpec::PartialConing { a: 11, b: 6, d: 5 },
            FamilySpec::PartialConing { a: 6, b: 10, d: 5 },
            FamilySpec::PartialConing { a: 8, b: 3, d: 3 },
        ] {
            assert!(spec.build().is_err());
        }
    }

    #[test]
    fn h_graph_counts() {
        for d in 3..=7 {
            let (g, js) = h_graph(d);
            assert_eq!(g.vertex_count(), 3 * d - 1);
            assert_eq!(js.extraneous().len(), 1 + binomial(d - 1, 2));
            assert_eq!(g.vertex_count() + js.extraneous().len(), qrm_width(d));
        }
        assert!(FamilySpec::HGraph { d: 2 }.build().is_err());
    }

    #[test]
    fn chain_attachment_counts() {
        let g = chain_attachment(5, 3, Host::complete(6)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 56));
        let h = chain_attachment(6, 3, Host::complete(7)).unwrap();
        assert_eq!(h.vertex_count(), 2 + 3 + 7 + 5);
        assert!(chain_attachment(5, 2, Host::complete(6)).unwrap_err().to_string().contains("2 < i"));
        assert!(chain_attachment(5, 3, Host::complete(5)).is_err());
        // closed forms with a bigger host
        let big = chain_attachment(5, 3, Host::complete(9)).unwrap();
        assert_eq!(big.vertex_count(), 14 + 9 - 6);
        assert_eq!(big.edge_count(), 41 + 36);
    }

    #[test]
    fn general_chain_matches_first_family() {
        let a = chain_attachment_general(5, 2, 3, Host::complete(6)).unwrap();
        let b = chain_attachment(5, 3, Host::complete(6)).unwrap();
        assert_eq!(a, b);
        let spec = FamilySpec::ChainAttachmentGeneral { d: 6, x: 3, i: 4, host: Some(Host::complete(8)) };
        assert_eq!(spec.chain_layers(), Some([3, 4, 8, 4]));
        assert!(spec.build().is_ok());
        assert!(chain_attachment_general(5, 3, 3, Host::complete(6)).unwrap_err().to_string().contains("x < i"));
        assert_eq!(chain_middle_total(5, 2), 8);
        assert_eq!(chain_middle_total(6, 3), 12);
    }

    #[test]
    fn fig8_graph_is_the_expected_join() {
        let inst = preset("c2354-k6").unwrap().build().unwrap();
        let js = inst.join.unwrap();
        assert_eq!(js.sizes(), (7, 7));
        assert_eq!(js.extraneous().len(), 7);
    }

    #[test]
    fn spec_json_shape() {
        let spec = FamilySpec::ChainAttachment { d: 5, i: 3, host: Some(Host::complete(6)) };
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(v, json!({"kind": "chain_attachment", "params": {"d": 5, "i": 3, "host": "K6"}}));
        assert_eq!(serde_json::from_value::<FamilySpec>(v).unwrap(), spec);
        let bare: FamilySpec = serde_json::from_value(json!({"kind": "h_graph", "params": {"d": 4}})).unwrap();
        assert_eq!(bare, FamilySpec::HGraph { d: 4 });
        assert!("K".parse::<Host>().is_err());
        assert_eq!("K8".parse::<Host>().unwrap().n, 8);
    }

    #[test]
    fn presets_build() {
        for p in presets() {
            p.spec.build().unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
        assert!(preset("nope").is_err());
        let outlier = preset("c3355-outlier").unwrap();
        assert_eq!(outlier.host().unwrap().n, outlier.dim() + 2);
    }

    #[test]
    fn grid_is_balanced_and_bounded() {
        let grid = balanced_bipartite_grid(3);
        assert!(grid.contains(&(4, 4)) && grid.contains(&(5, 5)) && grid.contains(&(4, 6)));
        assert!(grid.iter().all(|&(a, b)| a >= 4 && b >= a && a + b <= 10));
        assert_eq!(grid_graph(2, 3).edge_count(), 6);
    }
}
