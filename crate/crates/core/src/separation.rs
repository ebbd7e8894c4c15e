//! Separation of the P4 family `y_il + y_kj + y_kl <= 2 + y_ij`.
//!
//! For every pair `(i, j)` the routines report the single most violated row,
//! if its violation exceeds the scalar's cut tolerance. The dynamic program
//! builds the best one-intermediate path between row pairs (and the runner-up
//! through a different column) so that the path `i - l - k - j` can avoid `j`
//! without rescanning all columns.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The row `y_il + y_kj + y_kl <= 2 + y_ij` together with its violation at the
/// point it was separated from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P4Cut<T> {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub l: usize,
    pub violation: T,
}

impl<T: Scalar> P4Cut<T> {
    pub fn key(&self) -> (usize, usize, usize, usize) {
        (self.i, self.k, self.j, self.l)
    }

    pub fn violation_at(&self, point: &FractionalPoint<T>) -> T {
        point.get(self.i, self.l) + point.get(self.k, self.j) + point.get(self.k, self.l)
            - point.get(self.i, self.j)
            - T::lit(2.0)
    }
}

/// A `u_count x v_count` matrix of relaxation values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPoint<T> {
    u_count: usize,
    v_count: usize,
    values: Vec<T>,
}

impl<T: Scalar> FractionalPoint<T> {
    /// Row-major values; every entry must lie in `[0, 1]`.
    pub fn new(u_count: usize, v_count: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != u_count * v_count {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {u_count}x{v_count} point",
                values.len()
            )));
        }
        if let Some(p) = values
            .iter()
            .position(|&v| !(v >= T::zero() && v <= T::one()))
        {
            return Err(Error::InvalidArgument(format!(
                "value at position {p} is outside [0, 1]"
            )));
        }
        Ok(Self {
            u_count,
            v_count,
            values,
        })
    }

    /// LP values clamped into `[0, 1]`.
    pub fn from_relaxation(u_count: usize, v_count: usize, values: &[T]) -> Result<Self> {
        let clamped = values
            .iter()
            .map(|&v| v.max(T::zero()).min(T::one()))
            .collect();
        Self::new(u_count, v_count, clamped)
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.v_count + j]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Best and second-best one-intermediate path between two rows.
#[derive(Clone, Copy)]
struct PairPaths<T> {
    best: T,
    best_col: usize,
    second: Option<(T, usize)>,
}

/// Most violated P4 row per `(i, j)` by dynamic programming,
/// `O(|U|^2 |V|)` time.
pub fn separate_dp<T: Scalar>(point: &FractionalPoint<T>) -> Vec<P4Cut<T>> {
    let (nu, nv) = (point.u_count, point.v_count);
    if nu < 2 || nv < 2 {
        return Vec::new();
    }
    // d2'/d2'' with their argmaxes, symmetric in (i, k)
    let mut paths: Vec<Option<PairPaths<T>>> = vec![None; nu * nu];
    for i in 0..nu {
        for k in (i + 1)..nu {
            let mut best = (T::neg_infinity(), 0);
            for l in 0..nv {
                let s = point.get(i, l) + point.get(k, l);
                if s > best.0 {
                    best = (s, l);
                }
            }
            let mut second: Option<(T, usize)> = None;
            for l in (0..nv).filter(|&l| l != best.1) {
                let s = point.get(i, l) + point.get(k, l);
                if second.is_none_or(|(v, _)| s > v) {
                    second = Some((s, l));
                }
            }
            let p = Some(PairPaths {
                best: best.0,
                best_col: best.1,
                second,
            });
            paths[i * nu + k] = p;
            paths[k * nu + i] = p;
        }
    }

    let two = T::lit(2.0);
    let mut cuts = Vec::new();
    for i in 0..nu {
        for j in 0..nv {
            // d3 = max over k of d2_ikj + d1_kj
            let mut best: Option<(T, usize, usize)> = None;
            for k in (0..nu).filter(|&k| k != i) {
                let p = paths[i * nu + k].expect("pair table filled");
                let (d2, l) = if j != p.best_col {
                    (p.best, p.best_col)
                } else {
                    match p.second {
                        Some(s) => s,
                        None => continue,
                    }
                };
                let d3 = d2 + point.get(k, j);
                if best.is_none_or(|(v, _, _)| d3 > v) {
                    best = Some((d3, k, l));
                }
            }
            if let Some((d3, k, l)) = best {
                // d3 - d1 > 2, then the reported violation is recomputed in
                // the same order as the exhaustive routine
                if d3 - point.get(i, j) > two {
                    let mut cut = P4Cut {
                        i,
                        k,
                        j,
                        l,
                        violation: T::zero(),
                    };
                    cut.violation = cut.violation_at(point);
                    if cut.violation > T::cut_tol() {
                        cuts.push(cut);
                    }
                }
            }
        }
    }
    cuts
}

/// Same contract as [`separate_dp`] by direct enumeration over `(k, l)`,
/// `O(|U|^2 |V|^2)` time.
pub fn separate_exhaustive<T: Scalar>(point: &FractionalPoint<T>) -> Vec<P4Cut<T>> {
    let (nu, nv) = (point.u_count, point.v_count);
    let mut cuts = Vec::new();
    if nu < 2 || nv < 2 {
        return cuts;
    }
    let two = T::lit(2.0);
    for i in 0..nu {
        for j in 0..nv {
            let mut best: Option<(T, usize, usize)> = None;
            for k in (0..nu).filter(|&k| k != i) {
                for l in (0..nv).filter(|&l| l != j) {
                    let v =
                        point.get(i, l) + point.get(k, j) + point.get(k, l) - point.get(i, j) - two;
                    if best.is_none_or(|(b, _, _)| v > b) {
                        best = Some((v, k, l));
                    }
                }
            }
            if let Some((v, k, l)) = best {
                if v > T::cut_tol() {
                    cuts.push(P4Cut {
                        i,
                        k,
                        j,
                        l,
                        violation: v,
                    });
                }
            }
        }
    }
    cuts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_bicluster_graph, BipartiteInstance};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point(rows: &[&[f64]]) -> FractionalPoint<f64> {
        let v = rows[0].len();
        FractionalPoint::new(
            rows.len(),
            v,
            rows.iter().flat_map(|r| r.iter().copied()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn realized_p4_gives_unit_violation() {
        // i=0,k=1,j=0,l=1: y_il = y_kj = y_kl = 1, y_ij = 0
        let p = point(&[&[0.0, 1.0], &[1.0, 1.0]]);
        for cuts in [separate_dp(&p), separate_exhaustive(&p)] {
            assert_eq!(cuts.len(), 1);
            assert_eq!(cuts[0].key(), (0, 1, 0, 1));
            assert_eq!(cuts[0].violation, 1.0);
        }
    }

    #[test]
    fn bicluster_indicator_is_clean() {
        let p = point(&[&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(separate_dp(&p).is_empty());
        assert!(separate_exhaustive(&p).is_empty());
    }

    #[test]
    fn two_by_two_fractional_point() {
        let p = point(&[&[0.9, 0.9], &[0.9, 0.0]]);
        for cuts in [separate_dp(&p), separate_exhaustive(&p)] {
            assert_eq!(cuts.len(), 1);
            let c = cuts[0];
            assert_eq!((c.i, c.j), (1, 1));
            assert!((c.violation - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn zeros_and_thin_points() {
        let z = FractionalPoint::new(3, 3, vec![0.0; 9]).unwrap();
        assert!(separate_exhaustive(&z).is_empty());
        assert!(separate_dp(&z).is_empty());
        let thin = FractionalPoint::new(4, 1, vec![1.0; 4]).unwrap();
        assert!(separate_dp(&thin).is_empty());
    }

    #[test]
    fn point_validation() {
        assert!(FractionalPoint::new(2, 2, vec![0.0; 3]).is_err());
        assert!(FractionalPoint::new(1, 1, vec![1.5]).is_err());
        assert_eq!(
            FractionalPoint::from_relaxation(1, 2, &[1.0 + 1e-12, -1e-12])
                .unwrap()
                .values(),
            &[1.0, 0.0]
        );
    }

    fn max_per_pair(cuts: &[P4Cut<f64>], nu: usize, nv: usize) -> Vec<Option<f64>> {
        let mut out = vec![None; nu * nv];
        for c in cuts {
            assert!(out[c.i * nv + c.j].is_none(), "two cuts for one pair");
            out[c.i * nv + c.j] = Some(c.violation);
        }
        out
    }

    #[test]
    fn dp_matches_exhaustive_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let nu = rng.gen_range(1..=8);
            let nv = rng.gen_range(1..=8);
            let vals = (0..nu * nv)
                .map(|_| match rng.gen_range(0..4) {
                    0 => 0.0,
                    1 => 1.0,
                    _ => rng.gen::<f64>(),
                })
                .collect();
            let p = FractionalPoint::new(nu, nv, vals).unwrap();
            let dp = separate_dp(&p);
            let ex = separate_exhaustive(&p);
            for c in &dp {
                assert!((c.violation_at(&p) - c.violation).abs() < 1e-12);
                assert!(c.i != c.k && c.j != c.l);
            }
            let (a, b) = (max_per_pair(&dp, nu, nv), max_per_pair(&ex, nu, nv));
            for (x, y) in a.iter().zip(&b) {
                match (x, y) {
                    (Some(x), Some(y)) => assert!((x - y).abs() < 1e-9),
                    (None, None) => {}
                    _ => panic!("dp {x:?} vs exhaustive {y:?}"),
                }
            }
        }
    }

    #[test]
    fn integral_points_are_clean_iff_bicluster_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let nu = rng.gen_range(1..=5);
            let nv = rng.gen_range(1..=5);
            let bits: Vec<bool> = (0..nu * nv).map(|_| rng.gen_bool(0.5)).collect();
            let rows: Vec<Vec<bool>> = bits.chunks(nv).map(<[bool]>::to_vec).collect();
            let g = BipartiteInstance::from_matrix(&rows).unwrap();
            let p = FractionalPoint::new(
                nu,
                nv,
                bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
            )
            .unwrap();
            assert_eq!(separate_dp(&p).is_empty(), is_bicluster_graph(&g));
        }
    }

    #[test]
    fn single_precision_agrees() {
        let p = FractionalPoint::<f32>::new(2, 2, vec![0.9, 0.9, 0.9, 0.0]).unwrap();
        let c = separate_dp(&p);
        assert_eq!(c.len(), 1);
        assert!((c[0].violation - 0.7).abs() < 1e-5);
    }
}
