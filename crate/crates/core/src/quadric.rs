//! Quadric rigidity matrices of joined frameworks.
//!
//! For a balanced join, the infinitesimal flexes modulo trivial motions are
//! exactly the quadric flexes: a symmetric `(d+1) x (d+1)` matrix `Q` with
//! `(p_v, 1)^T Q (p_v, 1) = 0` at every vertex and `(p_i, 1)^T Q (p_j, 1) = 0`
//! on every extraneous edge moves one class along `Q (p, 1)` and the other
//! against it. Those conditions are linear in the entries of `Q`; stacking them
//! gives the quadric rigidity matrix (QRM), with `C(d+2, 2)` columns. The
//! framework is infinitesimally rigid iff the QRM has full column rank.
//!
//! Column order: squares `x_k^2`, then cross terms `x_j x_k` for `j < k` in
//! lexicographic order, then linear terms `x_k`, then the constant. A kernel
//! vector holds the entries of `Q` in that order (upper triangle, with the
//! last row of `Q` for the linear terms).

use rand::Rng;
use serde_json::Value;

use crate::field::Field;
use crate::graph::{recognize_balanced_join, Edge, Graph, JoinError, JoinStructure};
use crate::matrix::{dot, Matrix};
use crate::rigidity::{binomial, Configuration, RigidityError};

pub use crate::rigidity::flex_dim_mod_trivial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadricError {
    #[error("points have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("join structure covers {join} vertices but the configuration has {points}")]
    SizeMismatch { join: usize, points: usize },
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { got: usize, expected: usize },
    #[error("graph is not a balanced joined graph in dimension {0}")]
    NotBalancedJoin(usize),
    #[error("quadric violates the constraint in QRM row {0}")]
    NotInKernel(usize),
    #[error(transparent)]
    Join(#[from] JoinError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
}

pub type Result<T, E = QuadricError> = std::result::Result<T, E>;

/// Number of QRM columns in dimension `d`.
pub fn qrm_width(d: usize) -> usize {
    binomial(d + 2, 2)
}

/// Column labels: `x1^2, ..., x1x2, ..., x1, ..., 1`.
pub fn qrm_column_names(d: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=d).map(|k| format!("x{k}^2")).collect();
    for j in 1..=d {
        for k in j + 1..=d {
            names.push(format!("x{j}x{k}"));
        }
    }
    names.extend((1..=d).map(|k| format!("x{k}")));
    names.push("1".to_string());
    names
}

/// The constraint mapping `m(p, q)`:
/// `(p_k q_k)_k, (p_j q_k + p_k q_j)_{j<k}, (p_k + q_k)_k, 1`.
pub fn constraint_map<F: Field>(p: &[F], q: &[F]) -> Result<Vec<F>> {
    if p.len() != q.len() {
        return Err(QuadricError::DimensionMismatch(p.len(), q.len()));
    }
    let d = p.len();
    let mut row = Vec::with_capacity(qrm_width(d));
    row.extend((0..d).map(|k| p[k].clone() * q[k].clone()));
    for j in 0..d {
        for k in j + 1..d {
            row.push(p[j].clone() * q[k].clone() + p[k].clone() * q[j].clone());
        }
    }
    row.extend((0..d).map(|k| p[k].clone() + q[k].clone()));
    row.push(F::one());
    Ok(row)
}

/// Vertex rows `m(p_v, p_v)` in index order, then extraneous-edge rows
/// `m(p_i, p_j)` in sorted edge order.
pub fn qrm<F: Field>(join: &JoinStructure, p: &Configuration<F>) -> Result<Matrix<F>> {
    if join.vertex_count() != p.len() {
        return Err(QuadricError::SizeMismatch { join: join.vertex_count(), points: p.len() });
    }
    let width = qrm_width(p.dim());
    let mut rows = Vec::with_capacity(p.len() + join.extraneous().len());
    for v in 0..p.len() {
        rows.push(constraint_map(p.point(v), p.point(v))?);
    }
    for &(i, j) in join.extraneous() {
        rows.push(constraint_map(p.point(i), p.point(j))?);
    }
    Ok(Matrix::from_rows(rows, width).map_err(RigidityError::from)?)
}

/// Coefficients of `sum A_k x_k^2 + sum B_jk x_j x_k + sum C_k x_k + D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricCoefficients<F> {
    pub squares: Vec<F>,
    pub cross: Vec<F>,
    pub linear: Vec<F>,
    pub constant: F,
}

impl<F: Field> QuadricCoefficients<F> {
    pub fn zero(d: usize) -> Self {
        QuadricCoefficients {
            squares: vec![F::zero(); d],
            cross: vec![F::zero(); binomial(d, 2)],
            linear: vec![F::zero(); d],
            constant: F::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.squares.len()
    }

    /// From a QRM kernel vector. Its cross and linear entries are the
    /// off-diagonal entries of `Q`, i.e. half the polynomial coefficients.
    pub fn from_constraint_vector(x: &[F], d: usize) -> Result<Self> {
        let expected = qrm_width(d);
        if x.len() != expected {
            return Err(QuadricError::CoefficientLength { got: x.len(), expected });
        }
        let two = F::from_i64(2);
        let c = binomial(d, 2);
        Ok(QuadricCoefficients {
            squares: x[..d].to_vec(),
            cross: x[d..d + c].iter().map(|v| two.clone() * v.clone()).collect(),
            linear: x[d + c..2 * d + c].iter().map(|v| two.clone() * v.clone()).collect(),
            constant: x[2 * d + c].clone(),
        })
    }

    /// Inverse of [`Self::from_constraint_vector`].
    pub fn to_constraint_vector(&self) -> Vec<F> {
        let half = F::half();
        let mut x = self.squares.clone();
        x.extend(self.cross.iter().map(|b| half.clone() * b.clone()));
        x.extend(self.linear.iter().map(|c| half.clone() * c.clone()));
        x.push(self.constant.clone());
        x
    }

    /// The symmetric `(d+1) x (d+1)` matrix `Q` with `Q_kk = A_k`,
    /// `Q_jk = B_jk / 2`, `Q_{d+1,k} = C_k / 2`, `Q_{d+1,d+1} = D`.
    pub fn homogeneous_matrix(&self) -> Matrix<F> {
        let d = self.dim();
        let half = F::half();
        let mut q = Matrix::zeros(d + 1, d + 1);
        for k in 0..d {
            q.set(k, k, self.squares[k].clone());
        }
        let mut idx = 0;
        for j in 0..d {
            for k in j + 1..d {
                let v = half.clone() * self.cross[idx].clone();
                q.set(j, k, v.clone());
                q.set(k, j, v);
                idx += 1;
            }
        }
        for k in 0..d {
            let v = half.clone() * self.linear[k].clone();
            q.set(d, k, v.clone());
            q.set(k, d, v);
        }
        q.set(d, d, self.constant.clone());
        q
    }

    /// The polynomial at `p`; zero iff `p` lies on the quadric.
    pub fn evaluate(&self, p: &[F]) -> F {
        self.bilinear(p, p)
    }

    /// `(p, 1)^T Q (q, 1)`.
    pub fn bilinear(&self, p: &[F], q: &[F]) -> F {
        let m = constraint_map(p, q).expect("points share a dimension");
        dot(&m, &self.to_constraint_vector())
    }

    pub fn is_zero(&self) -> bool {
        self.squares.iter().chain(&self.cross).chain(&self.linear).all(Field::is_zero) && self.constant.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[F]| Value::Array(v.iter().map(F::to_json).collect());
        serde_json::json!({
            "squares": list(&self.squares),
            "cross": list(&self.cross),
            "linear": list(&self.linear),
            "constant": self.constant.to_json(),
        })
    }
}

/// Quadrics through every vertex that also satisfy every extraneous-edge
/// constraint: the QRM kernel.
pub fn quadric_basis<F: Field>(join: &JoinStructure, p: &Configuration<F>) -> Result<Vec<QuadricCoefficients<F>>> {
    qrm(join, p)?
        .kernel_basis()
        .iter()
        .map(|x| QuadricCoefficients::from_constraint_vector(x, p.dim()))
        .collect()
}

/// One velocity per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexVector<F> {
    pub velocities: Vec<Vec<F>>,
}

impl<F: Field> FlexVector<F> {
    /// Concatenated velocities, matching rigidity matrix columns.
    pub fn flatten(&self) -> Vec<F> {
        self.velocities.iter().flatten().cloned().collect()
    }

    /// First edge whose length changes to first order, if any.
    pub fn violated_edge(&self, g: &Graph, p: &Configuration<F>) -> Option<Edge> {
        g.edges().find(|&(i, j)| {
            let dp: Vec<F> = p.point(i).iter().zip(p.point(j)).map(|(a, b)| a.clone() - b.clone()).collect();
            let dv: Vec<F> = self.velocities[i]
                .iter()
                .zip(&self.velocities[j])
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            !dot(&dp, &dv).is_zero()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.velocities.iter().flatten().all(Field::is_zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.velocities
                .iter()
                .map(|v| Value::Array(v.iter().map(F::to_json).collect()))
                .collect(),
        )
    }
}

/// The quadric flex of `quadric`: vertices of the left class move by the first
/// `d` coordinates of `Q (p_v, 1)`, vertices of the right class by the negation.
pub fn quadric_flex<F: Field>(
    quadric: &QuadricCoefficients<F>,
    join: &JoinStructure,
    p: &Configuration<F>,
) -> Result<FlexVector<F>> {
    if quadric.dim() != p.dim() {
        return Err(QuadricError::DimensionMismatch(quadric.dim(), p.dim()));
    }
    let m = qrm(join, p)?;
    let x = quadric.to_constraint_vector();
    if let Some(row) = m.mul_vec(&x).map_err(RigidityError::from)?.iter().position(|r| !r.is_zero()) {
        return Err(QuadricError::NotInKernel(row));
    }
    let q = quadric.homogeneous_matrix();
    let d = p.dim();
    let velocities = (0..p.len())
        .map(|v| {
            let mut h = p.point(v).to_vec();
            h.push(F::one());
            let image = q.mul_vec(&h).expect("homogeneous vector has d + 1 entries");
            let vel = image[..d].to_vec();
            if join.in_left(v) {
                vel
            } else {
                vel.into_iter().map(|c| -c).collect()
            }
        })
        .collect();
    Ok(FlexVector { velocities })
}

/// Recognizes a balanced join of `g` for dimension `d`.
pub fn balanced_join_of(g: &Graph, d: usize) -> Result<JoinStructure> {
    recognize_balanced_join(g, d).ok_or(QuadricError::NotBalancedJoin(d))
}

/// QRM rank of `join` at generic configurations, checked across trials.
pub fn generic_qrm_rank<F: Field>(
    join: &JoinStructure,
    d: usize,
    rng: &mut (impl Rng + ?Sized),
    trials: usize,
) -> Result<usize> {
    if trials == 0 {
        return Err(RigidityError::NoTrials.into());
    }
    let mut ranks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = Configuration::<F>::random(join.vertex_count(), d, rng)?;
        ranks.push(qrm(join, &p)?.rank());
    }
    if ranks.iter().any(|r| *r != ranks[0]) {
        return Err(RigidityError::TrialDisagreement {
            quantity: "QRM rank".into(),
            values: ranks.iter().map(ToString::to_string).collect(),
        }
        .into());
    }
    Ok(ranks[0])
}

/// Generic local rigidity decided through the QRM. Refuses graphs that are
/// not balanced joins in dimension `d`.
pub fn is_glr_via_qrm<F: Field>(g: &Graph, d: usize, rng: &mut (impl Rng + ?Sized), trials: usize) -> Result<bool> {
    let join = balanced_join_of(g, d)?;
    Ok(generic_qrm_rank::<F>(&join, d, rng, trials)? == qrm_width(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, F61};
    use crate::graph::{complete, complete_bipartite, disjoint_union, empty_graph, join};
    use crate::rigidity::{rigidity_matrix, trivial_motion_basis};
    use crate::matrix::rank_of_vectors;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn constraint_map_examples() {
        assert_eq!(constraint_map(&ints(&[4, -5]), &ints(&[2, 4])).unwrap(), ints(&[8, -20, 6, 6, -1, 1]));
        assert_eq!(constraint_map(&ints(&[4, -5]), &ints(&[4, -5])).unwrap(), ints(&[16, 25, -40, 8, -10, 1]));
        assert_eq!(constraint_map(&ints(&[0, 0, 0]), &ints(&[0, 0, 0])).unwrap(), ints(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert!(constraint_map(&ints(&[1]), &ints(&[1, 2])).is_err());
    }

    #[test]
    fn plane_example_qrm() {
        let js = JoinStructure::from_parts(vec![0, 1, 2], vec![3, 4, 5], vec![(0, 1)]).unwrap();
        let p = Configuration::<Rational>::from_i64(2, &[&[4, -5], &[2, 4], &[-1, 3], &[-4, -1], &[-9, 0], &[5, 7]])
            .unwrap();
        let m = qrm(&js, &p).unwrap();
        // rows are m(p_v, p_v) then m(p_1, p_2), computed by hand from the definition
        let expected = Matrix::<Rational>::from_i64_rows(&[
            &[16, 25, -40, 8, -10, 1],
            &[4, 16, 16, 4, 8, 1],
            &[1, 9, -6, -2, 6, 1],
            &[16, 1, 8, -8, -2, 1],
            &[81, 0, 0, -18, 0, 1],
            &[25, 49, 70, 10, 14, 1],
            &[8, -20, 6, 6, -1, 1],
        ])
        .unwrap();
        assert_eq!(m, expected);
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn column_names_for_plane() {
        assert_eq!(qrm_column_names(2), ["x1^2", "x2^2", "x1x2", "x1", "x2", "1"]);
        assert_eq!(qrm_column_names(3).len(), 10);
    }

    #[test]
    fn coefficient_round_trip_and_matrix() {
        let x = ints(&[1, 2, 3, 4, 5, 6]);
        let qc = QuadricCoefficients::from_constraint_vector(&x, 2).unwrap();
        assert_eq!(qc.cross, ints(&[6]));
        assert_eq!(qc.linear, ints(&[8, 10]));
        assert_eq!(qc.to_constraint_vector(), x);
        let q = qc.homogeneous_matrix();
        assert_eq!(q.get(0, 1), &Rational::from_i64(3));
        assert_eq!(q.get(2, 0), &Rational::from_i64(4));
        assert_eq!(q.get(2, 2), &Rational::from_i64(6));
        // (p,1)^T Q (p,1) equals the polynomial
        let p = ints(&[2, -1]);
        let poly = 4 + 2 * 1 + 6 * -2 + 8 * 2 + 10 * -1 + 6;
        assert_eq!(qc.evaluate(&p), Rational::from_i64(poly));
        assert!(QuadricCoefficients::<Rational>::from_constraint_vector(&x, 3).is_err());
    }

    #[test]
    fn empty_join_qrm_is_vertex_rows() {
        let (g, js) = join(&empty_graph(3), &empty_graph(3));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Configuration::<F61>::random(g.vertex_count(), 2, &mut rng).unwrap();
        let m = qrm(&js, &p).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 6));
    }

    #[test]
    fn five_points_determine_one_conic() {
        let (_, js) = join(&empty_graph(3), &empty_graph(2));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Configuration::<F61>::random(5, 2, &mut rng).unwrap();
        let basis = quadric_basis(&js, &p).unwrap();
        assert_eq!(basis.len(), 1);
        for v in 0..5 {
            assert!(basis[0].evaluate(p.point(v)).is_zero());
        }
    }

    #[test]
    fn k44_quadric_flexes_are_nontrivial_motions() {
        let (g, js) = join(&empty_graph(4), &empty_graph(4));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = Configuration::<F61>::random(8, 3, &mut rng).unwrap();
        let basis = quadric_basis(&js, &p).unwrap();
        assert_eq!(basis.len(), 2);
        let rm = rigidity_matrix(&g, &p).unwrap();
        let mut stack = trivial_motion_basis(&p);
        for qc in &basis {
            let flex = quadric_flex(qc, &js, &p).unwrap();
            assert!(flex.violated_edge(&g, &p).is_none());
            assert!(rm.mul_vec(&flex.flatten()).unwrap().iter().all(Field::is_zero));
            stack.push(flex.flatten());
        }
        assert_eq!(rank_of_vectors(&stack, 24), 6 + 2);
    }

    #[test]
    fn zero_quadric_gives_zero_flex() {
        let (_, js) = join(&empty_graph(4), &empty_graph(4));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = Configuration::<F61>::random(8, 3, &mut rng).unwrap();
        let flex = quadric_flex(&QuadricCoefficients::zero(3), &js, &p).unwrap();
        assert!(flex.is_zero());
    }

    #[test]
    fn quadric_off_the_kernel_is_rejected() {
        let (_, js) = join(&empty_graph(4), &empty_graph(4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = Configuration::<F61>::random(8, 3, &mut rng).unwrap();
        let mut qc = QuadricCoefficients::zero(3);
        qc.constant = F61::one();
        assert_eq!(quadric_flex(&qc, &js, &p), Err(QuadricError::NotInKernel(0)));
    }

    #[test]
    fn extraneous_edges_are_preserved_by_flexes() {
        // (K2 ∪ E2) + E4 in R^3 has 8 + 1 rows and 10 columns
        let left = disjoint_union(&complete(2), &empty_graph(2));
        let (g, js) = join(&left, &empty_graph(4));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = Configuration::<F61>::random(8, 3, &mut rng).unwrap();
        let basis = quadric_basis(&js, &p).unwrap();
        assert_eq!(basis.len(), 1);
        let flex = quadric_flex(&basis[0], &js, &p).unwrap();
        assert!(flex.violated_edge(&g, &p).is_none());
        assert!(!flex.is_zero());
    }

    #[test]
    fn qrm_refuses_non_joins() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            is_glr_via_qrm::<F61>(&complete(7), 3, &mut rng, 2),
            Err(QuadricError::NotBalancedJoin(3))
        );
        assert!(!is_glr_via_qrm::<F61>(&complete_bipartite(4, 4), 3, &mut rng, 2).unwrap());
        assert!(is_glr_via_qrm::<F61>(&complete_bipartite(5, 5), 3, &mut rng, 2).unwrap());
    }

    #[test]
    fn size_mismatch_is_reported() {
        let (_, js) = join(&empty_graph(3), &empty_graph(3));
        let p = Configuration::<F61>::from_i64(2, &[&[0, 0]]).unwrap();
        assert_eq!(qrm(&js, &p), Err(QuadricError::SizeMismatch { join: 6, points: 1 }));
    }
}
