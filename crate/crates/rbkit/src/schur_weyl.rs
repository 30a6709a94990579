//! The action of diagrams on tensor powers of a vector space.
//!
//! Fix V with basis e_0, ..., e_n. A diagram on k columns acts on the
//! k-fold tensor power of V by a 0/1 matrix: a basis vector labeling of
//! the bottom row propagates along edges (labels at joined vertices must
//! agree) while every isolated vertex insists on the label 0. Stacking
//! diagrams matches composing these matrices, with each closed loop
//! contributing a factor of n+1 = dim V, and the algebra at x = n+1 acts
//! faithfully once n >= k. The action commutes with the diagonal action
//! of orthogonal matrices fixing e_0.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::diagrams::{self, Diagram};
use crate::linalg::{exact_rank, kronecker, Mat};
use crate::{CheckReport, RbError};

/// Environment variable limiting the tensor-space dimension (n+1)^k.
pub const MAX_DIM_ENV: &str = "RBKIT_MAX_DIM";

/// Default cap on (n+1)^k when the environment does not override it.
pub const DEFAULT_MAX_DIM: usize = 1024;

/// Reads the tensor dimension cap from the environment, falling back to
/// [`DEFAULT_MAX_DIM`] when unset or unparsable.
pub fn max_dim_from_env() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// The k-fold tensor power of an (n+1)-dimensional space, with its basis
/// enumerated in row-major mixed radix: the label of the first column is
/// the most significant digit.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    k: usize,
    n: usize,
    dim: usize,
}

impl TensorSpace {
    /// Uses the dimension cap from the environment.
    pub fn new(k: usize, n: usize) -> Result<Self, RbError> {
        TensorSpace::with_max_dim(k, n, max_dim_from_env())
    }

    pub fn with_max_dim(k: usize, n: usize, max_dim: usize) -> Result<Self, RbError> {
        let mut dim: u128 = 1;
        for _ in 0..k {
            dim = dim.saturating_mul((n + 1) as u128);
            if dim > max_dim as u128 {
                return Err(RbError::BoundExceeded {
                    what: "tensor space dimension (n+1)^k",
                    requested: dim.min(usize::MAX as u128) as usize,
                    limit: max_dim,
                });
            }
        }
        Ok(TensorSpace {
            k,
            n,
            dim: dim as usize,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for c in (0..self.k).rev() {
            out[c] = index % (self.n + 1);
            index /= self.n + 1;
        }
        out
    }

    /// The matrix of a diagram: rows are labelings of the top row, columns
    /// labelings of the bottom row.
    pub fn represent(&self, d: &Diagram) -> Result<Mat<i64>, RbError> {
        if d.k() != self.k {
            return Err(RbError::KMismatch {
                left: d.k(),
                right: self.k,
            });
        }
        let k = self.k;
        let edges = d.edges();
        let isolated = d.isolated_vertices();
        let mut m = Mat::filled(self.dim, self.dim, 0i64);
        for row in 0..self.dim {
            let top = self.digits(row);
            'cols: for col in 0..self.dim {
                let bottom = self.digits(col);
                let label = |v: usize| if v < k { top[v] } else { bottom[v - k] };
                for &v in &isolated {
                    if label(v) != 0 {
                        continue 'cols;
                    }
                }
                for &(a, b) in &edges {
                    if label(a) != label(b) {
                        continue 'cols;
                    }
                }
                m.set(row, col, 1);
            }
        }
        Ok(m)
    }
}

/// Samples an orthogonal matrix on n+1 coordinates that fixes the first
/// basis vector: a product of random plane rotations and sign flips on the
/// remaining n coordinates.
pub fn sample_orthogonal_fixing_first(n: usize, rng: &mut ChaCha8Rng) -> Mat<f64> {
    let dim = n + 1;
    let mut g = vec![vec![0.0f64; dim]; dim];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for a in 1..dim {
        for b in a + 1..dim {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (s, c) = theta.sin_cos();
            let (head, tail) = g.split_at_mut(b);
            for (ra, rb) in head[a].iter_mut().zip(tail[0].iter_mut()) {
                let (va, vb) = (*ra, *rb);
                *ra = c * va - s * vb;
                *rb = s * va + c * vb;
            }
        }
    }
    for row in g.iter_mut().skip(1) {
        if rng.gen_bool(0.5) {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
    }
    Mat::from_fn(dim, dim, |r, c| g[r][c])
}

/// Largest absolute entry of g g^T - I; small values certify orthogonality.
pub fn orthogonality_defect(g: &Mat<f64>) -> f64 {
    let dim = g.rows();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let dot: f64 = (0..dim).map(|c| g.get(i, c) * g.get(j, c)).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

fn max_abs_diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            worst = worst.max((a.get(r, c) - b.get(r, c)).abs());
        }
    }
    worst
}

/// Checks that stacking diagrams matches composing their matrices, with
/// the loop count appearing as a power of n+1. Exhaustive over all diagram
/// pairs when `samples` is None, otherwise over that many seeded random
/// pairs. Arithmetic is exact.
pub fn verify_homomorphism(
    k: usize,
    n: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<CheckReport, RbError> {
    let space = TensorSpace::new(k, n)?;
    let all = diagrams::enumerate(k)?;
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..all.len())
            .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
            .collect(),
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..all.len()), rng.gen_range(0..all.len())))
                .collect()
        }
    };
    let mut worst: i64 = 0;
    for &(i, j) in &pairs {
        let prod = all[i].concatenate(&all[j])?;
        let lhs = space.represent(&all[i])?.mul(&space.represent(&all[j])?);
        let scalar = (n as i64 + 1).pow(prod.loops);
        let rhs = space.represent(&prod.diagram)?.scale(scalar);
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                worst = worst.max((lhs.get(r, c) - rhs.get(r, c)).abs());
            }
        }
    }
    Ok(CheckReport {
        claim: "diagram stacking matches matrix composition on tensor space".into(),
        params: json!({
            "k": k,
            "n": n,
            "pairs": pairs.len(),
            "mode": if samples.is_none() { "exhaustive" } else { "sampled" },
            "seed": seed,
        }),
        residual: Some(worst as f64),
        rank: None,
        pass: worst == 0,
    })
}

/// Checks that diagram matrices commute with g tensored k times, for
/// seeded random orthogonal g fixing e_0 and seeded random diagrams.
pub fn verify_commuting(
    k: usize,
    n: usize,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckReport, RbError> {
    let space = TensorSpace::new(k, n)?;
    let all = diagrams::enumerate(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut worst_defect = 0.0f64;
    for _ in 0..samples {
        let g = sample_orthogonal_fixing_first(n, &mut rng);
        worst_defect = worst_defect.max(orthogonality_defect(&g));
        let mut gk = Mat::<f64>::identity(1);
        for _ in 0..k {
            gk = kronecker(&gk, &g);
        }
        let d = &all[rng.gen_range(0..all.len())];
        let dm = space.represent(d)?.map(|&v| v as f64);
        worst = worst.max(max_abs_diff(&dm.mul(&gk), &gk.mul(&dm)));
    }
    Ok(CheckReport {
        claim: "diagram action commutes with orthogonal matrices fixing e_0".into(),
        params: json!({
            "k": k,
            "n": n,
            "samples": samples,
            "seed": seed,
            "tolerance": tolerance,
            "orthogonality_defect": worst_defect,
        }),
        residual: Some(worst),
        rank: None,
        pass: worst < tolerance && worst_defect < 1e-12,
    })
}

/// Checks that distinct diagrams act by linearly independent matrices:
/// the exact rank of the (diagram count) x dim^2 matrix of flattened
/// actions must equal the diagram count. Holds whenever n >= k.
pub fn verify_faithful(k: usize, n: usize) -> Result<CheckReport, RbError> {
    let space = TensorSpace::new(k, n)?;
    let all = diagrams::enumerate(k)?;
    let dim = space.dim();
    let mut flat = Mat::filled(all.len(), dim * dim, BigInt::from(0));
    for (row, d) in all.iter().enumerate() {
        let m = space.represent(d)?;
        for r in 0..dim {
            for c in 0..dim {
                if *m.get(r, c) != 0 {
                    flat.set(row, r * dim + c, BigInt::from(*m.get(r, c)));
                }
            }
        }
    }
    let rank = exact_rank(&flat);
    Ok(CheckReport {
        claim: "diagram actions on tensor space are linearly independent".into(),
        params: json!({
            "k": k,
            "n": n,
            "diagrams": all.len(),
            "matrix_entries": dim * dim,
        }),
        residual: None,
        rank: Some(rank),
        pass: rank as u128 == diagrams::count(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_cap_matrix_frozen() {
        let space = TensorSpace::new(2, 1).unwrap();
        let m = space.represent(&Diagram::t(2, 1)).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = i64::from((r == 0 || r == 3) && (c == 0 || c == 3));
                assert_eq!(*m.get(r, c), want, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn deleted_strand_matrix_frozen() {
        let space = TensorSpace::new(1, 1).unwrap();
        let m = space.represent(&Diagram::p(1, 1)).unwrap();
        assert_eq!(*m.get(0, 0), 1);
        assert_eq!(*m.get(0, 1), 0);
        assert_eq!(*m.get(1, 0), 0);
        assert_eq!(*m.get(1, 1), 0);
    }

    #[test]
    fn identity_acts_as_identity() {
        let space = TensorSpace::new(3, 2).unwrap();
        let m = space.represent(&Diagram::identity(3)).unwrap();
        for r in 0..space.dim() {
            for c in 0..space.dim() {
                assert_eq!(*m.get(r, c), i64::from(r == c));
            }
        }
    }

    #[test]
    fn homomorphism_exhaustive_small() {
        for n in [1, 2] {
            let report = verify_homomorphism(2, n, None, 0).unwrap();
            assert!(report.pass, "n = {n}: {report:?}");
            assert_eq!(report.residual, Some(0.0));
        }
    }

    #[test]
    fn homomorphism_sampled_wider() {
        let report = verify_homomorphism(3, 3, Some(50), 7).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn commuting_with_orthogonal_subgroup() {
        let report = verify_commuting(2, 2, 10, 42, 1e-9).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn sampled_orthogonal_matrices_fix_first_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let g = sample_orthogonal_fixing_first(3, &mut rng);
            assert!(orthogonality_defect(&g) < 1e-12);
            for c in 0..4 {
                let want = if c == 0 { 1.0 } else { 0.0 };
                assert_eq!(*g.get(0, c), want);
                assert_eq!(*g.get(c, 0), want);
            }
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(11);
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        let g1 = sample_orthogonal_fixing_first(4, &mut rng1);
        let g2 = sample_orthogonal_fixing_first(4, &mut rng2);
        assert_eq!(g1, g2);
    }

    #[test]
    fn faithful_at_matching_size() {
        let report = verify_faithful(2, 2).unwrap();
        assert_eq!(report.rank, Some(10));
        assert!(report.pass);
    }

    #[test]
    fn not_faithful_below_matching_size() {
        let report = verify_faithful(2, 1).unwrap();
        assert!(!report.pass);
        assert!(report.rank.unwrap() < 10);
    }

    #[test]
    fn dimension_cap_enforced() {
        let err = TensorSpace::with_max_dim(11, 1, 1024).unwrap_err();
        assert!(matches!(err, RbError::BoundExceeded { .. }));
        assert!(TensorSpace::with_max_dim(10, 1, 1024).is_ok());
    }
}
