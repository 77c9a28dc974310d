//! Configurations, rigidity matrices, equilibrium stresses and the generic
//! rigidity decisions built on them.
//!
//! A rigidity matrix row for edge `ij` carries `p_i - p_j` in the block of
//! vertex `i` and `p_j - p_i` in the block of `j` (the Jacobian of the squared
//! edge lengths, without its global factor 2). Rows follow the sorted edge
//! order of the graph, so stress coordinates line up with [`Graph::edges`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::{parse_exact, Field};
use crate::graph::{Edge, Graph};
use crate::matrix::{rank_of_vectors, Matrix, MatrixError};

/// Random configurations are redrawn this many times before giving up on the
/// affine-span requirement.
pub const SPAN_ATTEMPTS: usize = 3;

/// Default number of independent generic trials.
pub const DEFAULT_TRIALS: usize = 2;

/// Random stress combinations tried per trial by the global rigidity test.
pub const DEFAULT_STRESS_SAMPLES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RigidityError {
    #[error("configuration has {points} points but the graph has {vertices} vertices")]
    SizeMismatch { vertices: usize, points: usize },
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("no affinely spanning configuration found after {0} attempts")]
    DegenerateConfiguration(usize),
    #[error("generic trials disagree on {quantity}: {values:?}")]
    TrialDisagreement { quantity: String, values: Vec<String> },
    #[error("graph is not infinitesimally rigid here (rank {rank}, target {target})")]
    NotRigid { rank: usize, target: usize },
    #[error("stress is not in equilibrium at vertex {0}")]
    NotEquilibrium(usize),
    #[error("stress has {got} entries, expected one per edge ({expected})")]
    StressLength { got: usize, expected: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("invalid coordinate data: {0}")]
    Coordinates(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub type Result<T, E = RigidityError> = std::result::Result<T, E>;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// An assignment of `d` coordinates to each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration<F> {
    d: usize,
    points: Vec<Vec<F>>,
}

impl<F: Field> Configuration<F> {
    pub fn new(d: usize, points: Vec<Vec<F>>) -> Result<Self> {
        if d == 0 {
            return Err(RigidityError::ZeroDimension);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(RigidityError::DimensionMismatch { index, got: p.len(), expected: d });
            }
        }
        Ok(Configuration { d, points })
    }

    pub fn from_i64(d: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(d, points.iter().map(|p| p.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    /// `n` points with fresh random coordinates. When `n >= d + 1` the points
    /// must affinely span `R^d`; degenerate draws are resampled.
    pub fn random(n: usize, d: usize, rng: &mut (impl Rng + ?Sized)) -> Result<Self> {
        if d == 0 {
            return Err(RigidityError::ZeroDimension);
        }
        for _ in 0..SPAN_ATTEMPTS {
            let points = (0..n).map(|_| (0..d).map(|_| F::random(rng)).collect()).collect();
            let config = Configuration { d, points };
            if n <= d || config.trivial_motion_rank() == binomial(d + 1, 2) {
                return Ok(config);
            }
        }
        Err(RigidityError::DegenerateConfiguration(SPAN_ATTEMPTS))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[F] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<F>] {
        &self.points
    }

    /// Appends a point.
    pub fn push(&mut self, p: Vec<F>) -> Result<()> {
        if p.len() != self.d {
            return Err(RigidityError::DimensionMismatch { index: self.points.len(), got: p.len(), expected: self.d });
        }
        self.points.push(p);
        Ok(())
    }

    pub fn trivial_motion_rank(&self) -> usize {
        rank_of_vectors(&trivial_motion_basis(self), self.len() * self.d)
    }

    /// Reads `{"d": int, "points": [[x, y, ...], ...]}` with exact entries
    /// (integers or `"num/den"` strings).
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| RigidityError::Coordinates(msg.to_string());
        let points = value.get("points").and_then(Value::as_array).ok_or_else(|| bad("missing `points` array"))?;
        let d = match value.get("d").and_then(Value::as_u64) {
            Some(d) => d as usize,
            None => points
                .first()
                .and_then(Value::as_array)
                .map(Vec::len)
                .ok_or_else(|| bad("missing `d`"))?,
        };
        let mut out = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let coords = p.as_array().ok_or_else(|| bad(&format!("point {i} is not an array")))?;
            let mut row = Vec::with_capacity(coords.len());
            for c in coords {
                let (num, den) = parse_exact(c).ok_or_else(|| bad(&format!("point {i}: `{c}` is not an exact number")))?;
                row.push(F::from_ratio(&num, &den).ok_or_else(|| bad(&format!("point {i}: denominator vanishes in this field")))?);
            }
            out.push(row);
        }
        Self::new(d, out)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "d": self.d,
            "points": self.points.iter().map(|p| p.iter().map(F::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(RigidityError::SizeMismatch { vertices: g.vertex_count(), points: self.len() });
        }
        Ok(())
    }
}

/// Random configuration for `n` vertices in `R^d`.
pub fn random_configuration<F: Field>(n: usize, d: usize, rng: &mut (impl Rng + ?Sized)) -> Result<Configuration<F>> {
    Configuration::random(n, d, rng)
}

/// A deterministic RNG for trial `t` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Rank a framework on `n` vertices in `R^d` reaches exactly when it is
/// infinitesimally rigid: `nd - C(d+1, 2)` for `n >= d + 1`, otherwise the
/// complete-graph value `C(n, 2)`.
pub fn target_rank(n: usize, d: usize) -> usize {
    if n <= d + 1 {
        binomial(n, 2)
    } else {
        n * d - binomial(d + 1, 2)
    }
}

pub fn rigidity_matrix<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<Matrix<F>> {
    p.check_graph(g)?;
    let d = p.dim();
    let mut m = Matrix::zeros(g.edge_count(), g.vertex_count() * d);
    for (row, (i, j)) in g.edges().enumerate() {
        for k in 0..d {
            let diff = p.point(i)[k].clone() - p.point(j)[k].clone();
            m.set(row, i * d + k, diff.clone());
            m.set(row, j * d + k, -diff);
        }
    }
    Ok(m)
}

/// Translations along each axis followed by the rotation generators for each
/// axis pair `(a, b)`, `a < b`: coordinate `a` of vertex `i` gets `p_{i,b}` and
/// coordinate `b` gets `-p_{i,a}`.
pub fn trivial_motion_basis<F: Field>(p: &Configuration<F>) -> Vec<Vec<F>> {
    let (n, d) = (p.len(), p.dim());
    let mut basis = Vec::with_capacity(binomial(d + 1, 2));
    for axis in 0..d {
        let mut v = vec![F::zero(); n * d];
        for i in 0..n {
            v[i * d + axis] = F::one();
        }
        basis.push(v);
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut v = vec![F::zero(); n * d];
            for i in 0..n {
                v[i * d + a] = p.point(i)[b].clone();
                v[i * d + b] = -p.point(i)[a].clone();
            }
            basis.push(v);
        }
    }
    basis
}

/// One weight per edge, in the graph's sorted edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressVector<F> {
    pub values: Vec<F>,
}

impl<F: Field> StressVector<F> {
    /// The first vertex at which `sum_j w_ij (p_i - p_j)` is nonzero, if any.
    pub fn equilibrium_violation(&self, g: &Graph, p: &Configuration<F>) -> Result<Option<usize>> {
        p.check_graph(g)?;
        if self.values.len() != g.edge_count() {
            return Err(RigidityError::StressLength { got: self.values.len(), expected: g.edge_count() });
        }
        let d = p.dim();
        let mut force = vec![vec![F::zero(); d]; g.vertex_count()];
        for ((i, j), w) in g.edges().zip(&self.values) {
            for k in 0..d {
                let t = w.clone() * (p.point(i)[k].clone() - p.point(j)[k].clone());
                force[i][k] = force[i][k].clone() + t.clone();
                force[j][k] = force[j][k].clone() - t;
            }
        }
        Ok(force.iter().position(|f| f.iter().any(|x| !x.is_zero())))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Field::is_zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(F::to_json).collect())
    }
}

/// Basis of the equilibrium stresses: the cokernel of the rigidity matrix.
pub fn stress_basis<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<Vec<StressVector<F>>> {
    let m = rigidity_matrix(g, p)?;
    Ok(m.cokernel_basis().into_iter().map(|values| StressVector { values }).collect())
}

/// Kernel vectors of the rigidity matrix that extend the trivial motions to a
/// basis of the full kernel. Empty exactly when the framework is
/// infinitesimally rigid.
pub fn nontrivial_flexes<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<Vec<Vec<F>>> {
    let m = rigidity_matrix(g, p)?;
    let len = m.cols();
    let mut span = trivial_motion_basis(p);
    let mut rank = rank_of_vectors(&span, len);
    let mut flexes = Vec::new();
    for v in m.kernel_basis() {
        span.push(v.clone());
        let r = rank_of_vectors(&span, len);
        if r > rank {
            rank = r;
            flexes.push(v);
        } else {
            span.pop();
        }
    }
    Ok(flexes)
}

/// Nullity of the rigidity matrix minus the dimension of the trivial motions.
pub fn flex_dim_at<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<usize> {
    let m = rigidity_matrix(g, p)?;
    let nullity = m.cols() - m.rank();
    Ok(nullity - p.trivial_motion_rank())
}

/// Edges on which some equilibrium stress is nonzero. Requires the framework
/// to be infinitesimally rigid.
pub fn redundant_edges<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<Vec<Edge>> {
    let m = rigidity_matrix(g, p)?;
    let rank = m.rank();
    let target = target_rank(g.vertex_count(), p.dim());
    if rank != target {
        return Err(RigidityError::NotRigid { rank, target });
    }
    let basis = m.cokernel_basis();
    Ok(g.edges()
        .enumerate()
        .filter(|(k, _)| basis.iter().any(|w| !w[*k].is_zero()))
        .map(|(_, e)| e)
        .collect())
}

/// Edges whose removal keeps the rank at its target, by direct re-ranking.
pub fn redundant_edges_by_deletion<F: Field>(g: &Graph, p: &Configuration<F>) -> Result<Vec<Edge>> {
    let m = rigidity_matrix(g, p)?;
    let rank = m.rank();
    let target = target_rank(g.vertex_count(), p.dim());
    if rank != target {
        return Err(RigidityError::NotRigid { rank, target });
    }
    let rows: Vec<Vec<F>> = m.iter_rows().map(<[F]>::to_vec).collect();
    Ok(g.edges()
        .enumerate()
        .filter(|&(k, _)| {
            let rest: Vec<Vec<F>> =
                rows.iter().enumerate().filter(|&(r, _)| r != k).map(|(_, row)| row.clone()).collect();
            rank_of_vectors(&rest, m.cols()) == target
        })
        .map(|(_, e)| e)
        .collect())
}

/// The `n x n` stress matrix: `-w_ij` off the diagonal on edges, zero on
/// non-edges, and a diagonal making every row sum to zero.
pub fn stress_matrix<F: Field>(g: &Graph, p: &Configuration<F>, stress: &StressVector<F>) -> Result<Matrix<F>> {
    if let Some(v) = stress.equilibrium_violation(g, p)? {
        return Err(RigidityError::NotEquilibrium(v));
    }
    let n = g.vertex_count();
    let mut m = Matrix::zeros(n, n);
    for ((i, j), w) in g.edges().zip(&stress.values) {
        m.set(i, j, -w.clone());
        m.set(j, i, -w.clone());
        let di = m.get(i, i).clone() + w.clone();
        m.set(i, i, di);
        let dj = m.get(j, j).clone() + w.clone();
        m.set(j, j, dj);
    }
    Ok(m)
}

/// Random linear combination of stress basis vectors.
pub fn random_stress<F: Field>(basis: &[StressVector<F>], edges: usize, rng: &mut (impl Rng + ?Sized)) -> StressVector<F> {
    let mut values = vec![F::zero(); edges];
    for w in basis {
        let c = F::random(rng);
        for (v, x) in values.iter_mut().zip(&w.values) {
            *v = v.clone() + c.clone() * x.clone();
        }
    }
    StressVector { values }
}

fn agree<T: PartialEq + std::fmt::Debug + Clone>(quantity: &str, values: Vec<T>) -> Result<T> {
    let first = values.first().cloned().ok_or(RigidityError::NoTrials)?;
    if values.iter().all(|v| *v == first) {
        Ok(first)
    } else {
        Err(RigidityError::TrialDisagreement {
            quantity: quantity.to_string(),
            values: values.iter().map(|v| format!("{v:?}")).collect(),
        })
    }
}

fn per_trial<F: Field, T>(
    g: &Graph,
    d: usize,
    rng: &mut (impl Rng + ?Sized),
    trials: usize,
    mut f: impl FnMut(&Configuration<F>) -> Result<T>,
) -> Result<Vec<T>> {
    if trials == 0 {
        return Err(RigidityError::NoTrials);
    }
    (0..trials)
        .map(|_| {
            let p = Configuration::<F>::random(g.vertex_count(), d, rng)?;
            f(&p)
        })
        .collect()
}

/// Rank of the rigidity matrix at generic configurations, checked to agree
/// across trials.
pub fn generic_rank<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<usize> {
    let ranks = per_trial::<F, _>(g, d, rng, trials, |p| Ok(rigidity_matrix(g, p)?.rank()))?;
    agree("rigidity matrix rank", ranks)
}

/// Generic local rigidity in `R^d`.
pub fn is_glr<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<bool> {
    Ok(generic_rank::<F>(g, d, rng, trials)? == target_rank(g.vertex_count(), d))
}

/// Generic redundant rigidity: rigid, and every edge carries some stress.
pub fn is_grr<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<bool> {
    let target = target_rank(g.vertex_count(), d);
    let results = per_trial::<F, _>(g, d, rng, trials, |p| {
        let m = rigidity_matrix(g, p)?;
        if m.rank() != target {
            return Ok(None);
        }
        Ok(Some(redundant_edges(g, p)?))
    })?;
    Ok(match agree("redundant edge set", results)? {
        Some(red) => red.len() == g.edge_count(),
        None => false,
    })
}

/// Dimension of the infinitesimal flexes modulo trivial motions.
pub fn flex_dim_mod_trivial<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<usize> {
    let dims = per_trial::<F, _>(g, d, rng, trials, |p| flex_dim_at(g, p))?;
    agree("flex dimension", dims)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GgrVerdict {
    GgrProbable,
    NotGgrProbable,
    Inapplicable,
}

impl std::fmt::Display for GgrVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GgrVerdict::GgrProbable => "ggr-probable",
            GgrVerdict::NotGgrProbable => "not-ggr-probable",
            GgrVerdict::Inapplicable => "inapplicable",
        })
    }
}

/// Outcome of the randomized stress-matrix test for generic global rigidity.
///
/// A generic framework of a rigid graph with at least `d + 2` vertices is
/// globally rigid exactly when some equilibrium stress has a stress matrix of
/// rank `n - d - 1`. Both directions of the verdict can err with probability
/// at most `deg / p` per sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GgrCertificate {
    pub max_stress_matrix_rank: usize,
    pub threshold: usize,
    pub verdict: GgrVerdict,
}

/// Max stress-matrix rank over `samples` random stresses at `p`.
pub fn max_stress_matrix_rank<F: Field>(
    g: &Graph,
    p: &Configuration<F>,
    samples: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<usize> {
    let basis = stress_basis(g, p)?;
    if basis.is_empty() {
        return Ok(0);
    }
    let mut best = 0;
    for _ in 0..samples.max(1) {
        let w = random_stress(&basis, g.edge_count(), rng);
        best = best.max(stress_matrix(g, p, &w)?.rank());
    }
    Ok(best)
}

/// Builds the verdict from a maximum stress-matrix rank.
pub fn certificate_from(n: usize, d: usize, applicable: bool, max_rank: usize) -> GgrCertificate {
    let threshold = n.saturating_sub(d + 1);
    let verdict = if !applicable {
        GgrVerdict::Inapplicable
    } else if max_rank == threshold {
        GgrVerdict::GgrProbable
    } else {
        GgrVerdict::NotGgrProbable
    };
    GgrCertificate { max_stress_matrix_rank: max_rank, threshold, verdict }
}

pub fn ggr_certificate<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<GgrCertificate> {
    ggr_certificate_with::<F>(g, d, rng, trials, DEFAULT_STRESS_SAMPLES)
}

pub fn ggr_certificate_with<F: Field>(
    g: &Graph,
    d: usize,
    rng: &mut (impl Rng + ?Sized),
    trials: usize,
    samples: usize,
) -> Result<GgrCertificate> {
    let n = g.vertex_count();
    if n < d + 2 || !is_glr::<F>(g, d, rng, trials)? {
        return Ok(certificate_from(n, d, false, 0));
    }
    let mut best = 0;
    for _ in 0..trials {
        let p = Configuration::<F>::random(n, d, rng)?;
        best = best.max(max_stress_matrix_rank(g, &p, samples, rng)?);
    }
    Ok(certificate_from(n, d, true, best))
}
