use core::fmt;
use core::iter::Sum;
use core::ops::Add;

/// A non-negative integer edge or solution cost, or [`Cost::INFINITE`].
///
/// Costs are stored scaled: the true cost is `value / scale` where `scale`
/// belongs to the instance. `INFINITE` absorbs addition and compares greater
/// than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITE: Cost = Cost(u64::MAX);
    /// Largest representable finite cost.
    pub const MAX_FINITE: u64 = u64::MAX - 1;

    /// Panics if `value` collides with the infinity sentinel.
    pub const fn new(value: u64) -> Cost {
        assert!(value <= Self::MAX_FINITE, "finite cost overflows sentinel");
        Cost(value)
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub const fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    /// The finite value, or `None` for `INFINITE`.
    pub const fn finite(self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        match self.0.checked_add(rhs.0) {
            Some(v) if v != u64::MAX => Cost(v),
            _ => Cost::INFINITE,
        }
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl From<u64> for Cost {
    fn from(v: u64) -> Cost {
        Cost::new(v)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}
