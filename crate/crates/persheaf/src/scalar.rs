use std::fmt;

use num_traits::{Num, Signed};

/// Scalar type the exact linear-algebra core is generic over.
///
/// Satisfied by `f32`/`f64` and by exact types such as
/// [`num_rational::BigRational`]. Exactness is a property of the chosen type,
/// not of the algorithms: over a floating type the same code runs but the
/// "exact" contracts of the callers only hold over an exact field.
pub trait Scalar: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {}

/// Sign of a scalar with respect to exact zero.
pub fn signum<T: Scalar>(x: &T) -> std::cmp::Ordering {
    if x.is_zero() {
        std::cmp::Ordering::Equal
    } else if x.is_positive() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use std::cmp::Ordering;

    #[test]
    fn signum_rational() {
        assert_eq!(signum(&Rat::from_integer(3.into())), Ordering::Greater);
        assert_eq!(signum(&Rat::from_integer((-3).into())), Ordering::Less);
        assert_eq!(signum(&Rat::from_integer(0.into())), Ordering::Equal);
    }

    #[test]
    fn signum_float() {
        assert_eq!(signum(&1.5f64), Ordering::Greater);
        assert_eq!(signum(&-0.25f64), Ordering::Less);
        assert_eq!(signum(&0.0f64), Ordering::Equal);
    }
}
