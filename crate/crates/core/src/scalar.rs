//! Floating-point scalar abstraction shared by the LP engine, the separation
//! routines and the branch-and-cut driver.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A floating-point type the numerical core can run on.
///
/// Each implementation carries its own tolerances; `f32` runs with looser
/// values because its epsilon is above the `f64` feasibility tolerance.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Primal feasibility tolerance for bounds and rows.
    fn feas_tol() -> Self;
    /// Reduced-cost optimality tolerance.
    fn opt_tol() -> Self;
    /// Smallest tableau entry accepted as a pivot.
    fn pivot_tol() -> Self;
    /// Minimum violation for a P4 row to be reported as a cut.
    fn cut_tol() -> Self;
    /// Default distance from 0/1 accepted as integral.
    fn int_tol() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar type")
    }
}

impl Scalar for f64 {
    fn feas_tol() -> Self {
        1e-7
    }
    fn opt_tol() -> Self {
        1e-9
    }
    fn pivot_tol() -> Self {
        1e-9
    }
    fn cut_tol() -> Self {
        1e-6
    }
    fn int_tol() -> Self {
        1e-6
    }
}

impl Scalar for f32 {
    fn feas_tol() -> Self {
        1e-4
    }
    fn opt_tol() -> Self {
        1e-5
    }
    fn pivot_tol() -> Self {
        1e-5
    }
    fn cut_tol() -> Self {
        1e-3
    }
    fn int_tol() -> Self {
        1e-3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_ordered() {
        fn check<T: Scalar>() {
            assert!(T::opt_tol() <= T::feas_tol());
            assert!(T::feas_tol() < T::cut_tol());
            assert!(T::cut_tol() <= T::int_tol());
        }
        check::<f64>();
        check::<f32>();
    }
}
