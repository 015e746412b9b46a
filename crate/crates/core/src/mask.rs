//! Points of the cube and subsets of coordinates, both as bit masks.
//!
//! Coordinate `i` (1-based) is bit `i - 1`.

use core::fmt;

macro_rules! mask_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[repr(transparent)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            /// Builds a mask from 1-based coordinates.
            pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Self {
                Self(coords.into_iter().fold(0u64, |acc, c| {
                    debug_assert!((1..=64).contains(&c));
                    acc | 1 << (c - 1)
                }))
            }

            #[inline]
            pub fn bits(self) -> u64 {
                self.0
            }

            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }

            /// Number of coordinates set.
            #[inline]
            pub fn weight(self) -> u32 {
                self.0.count_ones()
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn contains(self, coord: usize) -> bool {
                (1..=64).contains(&coord) && (self.0 >> (coord - 1)) & 1 == 1
            }

            /// Whether the mask only uses coordinates `1..=n`.
            #[inline]
            pub fn fits(self, n: u32) -> bool {
                n >= 64 || self.0 >> n == 0
            }

            /// Set coordinates in increasing order, 1-based.
            pub fn coords(self) -> impl Iterator<Item = usize> {
                let mut rest = self.0;
                core::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let c = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(c + 1)
                    }
                })
            }

            /// Largest set coordinate, 1-based.
            #[inline]
            pub fn max_coord(self) -> Option<usize> {
                (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
            }
        }

        impl From<usize> for $name {
            fn from(index: usize) -> Self {
                Self(index as u64)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("{")?;
                for (k, c) in self.coords().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("}")
            }
        }
    };
}

mask_type!(
    /// A point `x` of `{0,1}^n`; `x_i = 1` iff coordinate `i` is set.
    PointMask
);

mask_type!(
    /// A subset `S` of `{1, ..., n}`; `|S|` is [`SubsetMask::weight`].
    SubsetMask
);

impl PointMask {
    /// Value of coordinate `i` (1-based).
    #[inline]
    pub fn coord(self, i: usize) -> bool {
        self.contains(i)
    }

    /// `x XOR e_i`.
    #[inline]
    pub fn flip(self, i: usize) -> Self {
        Self(self.0 ^ 1 << (i - 1))
    }
}

impl SubsetMask {
    /// `|S intersect T|` for a point `T`.
    #[inline]
    pub fn overlap(self, point: PointMask) -> u32 {
        (self.0 & point.0).count_ones()
    }
}
