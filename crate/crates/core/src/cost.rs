//! Edge costs with exact infinities.
//!
//! A cost is a 128-bit integer read as `k * INF + f`, where `f` is a finite
//! 64-bit part and `k` counts infinities. Adding and later subtracting `INF`
//! restores the original value exactly, which the painting trick used by the
//! induced-tree construction relies on.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(i128);

const INF_UNIT: i128 = 1 << 64;
// Painting must dominate any realistic number of INF units on one edge.
const PAINT_UNIT: i128 = 1 << 96;

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITY: Cost = Cost(INF_UNIT);
    pub const NEG_INFINITY: Cost = Cost(-INF_UNIT);
    pub(crate) const PAINT: Cost = Cost(PAINT_UNIT);
    /// Above anything reachable by painting; used for padding.
    pub(crate) const SENTINEL: Cost = Cost(1 << 124);

    pub const fn finite(value: i64) -> Cost {
        Cost(value as i128)
    }

    pub fn is_finite(self) -> bool {
        self.0.abs() < INF_UNIT / 2
    }

    /// True when the value carries at least one painting unit.
    pub(crate) fn is_painted(self) -> bool {
        self.0 >= PAINT_UNIT / 2
    }

    /// The finite value, if any.
    pub fn get(self) -> Option<i64> {
        self.is_finite().then_some(self.0 as i64)
    }

    pub fn raw(self) -> i128 {
        self.0
    }
}

impl From<i64> for Cost {
    fn from(v: i64) -> Self {
        Cost::finite(v)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        Cost(self.0 - rhs.0)
    }
}

impl SubAssign for Cost {
    fn sub_assign(&mut self, rhs: Cost) {
        self.0 -= rhs.0;
    }
}

impl Neg for Cost {
    type Output = Cost;
    fn neg(self) -> Cost {
        Cost(-self.0)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            let k = self.0.div_euclid(INF_UNIT);
            let rest = self.0.rem_euclid(INF_UNIT);
            let (k, rest) = if rest > INF_UNIT / 2 { (k + 1, rest - INF_UNIT) } else { (k, rest) };
            match (k, rest) {
                (1, 0) => write!(f, "inf"),
                (-1, 0) => write!(f, "-inf"),
                _ => write!(f, "{k}*inf{rest:+}"),
            }
        }
    }
}
