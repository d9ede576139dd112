//! Lattice vectors in the character lattice `M` and the lattice of
//! one-parameter subgroups `N`, plus rational points of `M_R`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::{gcd, ExtendedGcd};
use num::Integer;

use crate::rat::{self, Rat};

/// Common interface of the two rank-2 lattices. `Dual` is the other one.
pub trait LatticeVec:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<i64, Output = Self>
    + Send
    + Sync
{
    type Dual: LatticeVec<Dual = Self>;
    fn new(x: i64, y: i64) -> Self;
    fn x(self) -> i64;
    fn y(self) -> i64;

    fn det(self, other: Self) -> i64 {
        self.x() * other.y() - self.y() * other.x()
    }

    fn pair(self, dual: Self::Dual) -> i64 {
        self.x() * dual.x() + self.y() * dual.y()
    }

    fn is_zero(self) -> bool {
        self.x() == 0 && self.y() == 0
    }

    fn content(self) -> i64 {
        gcd(self.x(), self.y())
    }

    fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// Divides out the content; zero stays zero.
    fn primitive(self) -> Self {
        let g = self.content();
        if g == 0 {
            self
        } else {
            Self::new(self.x() / g, self.y() / g)
        }
    }

    /// The primitive dual vector `(-y, x)`, which pairs to zero with `self`.
    fn perp(self) -> Self::Dual {
        Self::Dual::new(-self.y(), self.x())
    }
}

macro_rules! lattice_vec {
    ($name:ident, $dual:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name {
            pub x: i64,
            pub y: i64,
        }

        impl $name {
            pub const fn new(x: i64, y: i64) -> Self {
                Self { x, y }
            }
        }

        impl LatticeVec for $name {
            type Dual = $dual;
            fn new(x: i64, y: i64) -> Self {
                Self { x, y }
            }
            fn x(self) -> i64 {
                self.x
            }
            fn y(self) -> i64 {
                self.y
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{})", self.x, self.y)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{})", self.x, self.y)
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self::new(self.x + o.x, self.y + o.y)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self::new(self.x - o.x, self.y - o.y)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self::new(-self.x, -self.y)
            }
        }

        impl Mul<i64> for $name {
            type Output = Self;
            fn mul(self, k: i64) -> Self {
                Self::new(self.x * k, self.y * k)
            }
        }
    };
}

lattice_vec!(MVec, NVec, "A vector of the character lattice `M`.");
lattice_vec!(NVec, MVec, "A vector of the one-parameter-subgroup lattice `N`.");

/// A point of `M_R` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(rat::int(x), rat::int(y))
    }

    pub fn origin() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn pair(&self, n: NVec) -> Rat {
        &self.x * rat::int(n.x) + &self.y * rat::int(n.y)
    }

    pub fn add(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, s: &Rat) -> RatPoint {
        RatPoint::new(&self.x * s, &self.y * s)
    }

    pub fn cross(&self, o: &RatPoint) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn is_integral(&self) -> bool {
        rat::is_integer(&self.x) && rat::is_integer(&self.y)
    }

    pub fn to_mvec(&self) -> Option<MVec> {
        if !self.is_integral() {
            return None;
        }
        Some(MVec::new(
            rat::to_i64(self.x.numer())?,
            rat::to_i64(self.y.numer())?,
        ))
    }

    /// The primitive integer vector pointing the same way, if nonzero.
    pub fn primitive_direction<V: LatticeVec>(&self) -> Option<V> {
        let den = rat::common_denominator([&self.x, &self.y]);
        let x = (&self.x * Rat::from_integer(den.clone())).to_integer();
        let y = (&self.y * Rat::from_integer(den)).to_integer();
        let g = x.gcd(&y);
        if g == num::BigInt::from(0) {
            return None;
        }
        let x = rat::to_i64(&(x / &g))?;
        let y = rat::to_i64(&(y / &g))?;
        Some(V::new(x, y))
    }
}

impl From<MVec> for RatPoint {
    fn from(u: MVec) -> Self {
        RatPoint::from_ints(u.x, u.y)
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", rat::fmt(&self.x), rat::fmt(&self.y))
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand for building fixtures: `pt(a, b)` with integer coordinates.
pub fn pt(x: i64, y: i64) -> RatPoint {
    RatPoint::from_ints(x, y)
}

/// Some `u` in `M` with `<u, v> = 1`; `v` must be primitive.
pub fn unit_preimage(v: NVec) -> MVec {
    let ExtendedGcd { gcd, x, y } = v.x.extended_gcd(&v.y);
    debug_assert_eq!(gcd.abs(), 1);
    MVec::new(x * gcd, y * gcd)
}

/// The chosen generator of `v^perp` in `M`, `m = (-v_y, v_x)`.
pub fn orthogonal_character(v: NVec) -> MVec {
    v.perp()
}
