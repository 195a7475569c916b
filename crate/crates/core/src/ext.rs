//! Values extended with an infinite element.

use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

/// A value that is either finite or infinite.
///
/// `Finite(_)` always orders below `Infinite`, so `min`/`max` over a mix of
/// reachable and unreachable distances behave as expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T> Extended<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::Finite(x) => Extended::Finite(f(x)),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl<T: Add<Output = T>> Add for Extended<T> {
    type Output = Extended<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => x.fmt(f),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as themselves, infinity as the string `"inf"`.
impl<T: Serialize> Serialize for Extended<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(x) => x.serialize(serializer),
            Extended::Infinite => serializer.serialize_str("inf"),
        }
    }
}
