// SPDX-License-Identifier: Apache-2.0

//! Fixed-width bit strings in register order.
//!
//! A `Bits` of width `n` prints as `n` characters, leftmost first. The
//! leftmost character is the most significant bit of the stored value, so the
//! textual form of a bit string and the binary form of its basis index agree.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Widest bit string the crate handles; matches the basis-index width cap.
pub const MAX_BIT_WIDTH: usize = 32;

/// An immutable bit string of fixed width (1..=32 bits).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    value: u32,
    width: u8,
}

impl Bits {
    pub fn new(value: u32, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_BIT_WIDTH {
            return Err(Error::BitWidth(width));
        }
        if width < 32 && value >> width != 0 {
            return Err(Error::BitValue { value, width });
        }
        Ok(Bits {
            value,
            width: width as u8,
        })
    }

    pub fn zero(width: usize) -> Result<Self> {
        Bits::new(0, width)
    }

    /// The string with a single 1 at position `pos` (0 = leftmost bit).
    pub fn unit(width: usize, pos: usize) -> Result<Self> {
        if pos >= width {
            return Err(Error::BitPosition { pos, width });
        }
        Bits::new(1 << (width - 1 - pos), width)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    /// The value as a basis index.
    pub fn index(self) -> usize {
        self.value as usize
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Bit at position `pos`, counting from the leftmost (most significant).
    pub fn get(self, pos: usize) -> bool {
        assert!(pos < self.width(), "bit position out of range");
        (self.value >> (self.width() - 1 - pos)) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn count_ones(self) -> u32 {
        self.value.count_ones()
    }

    /// Inner product modulo 2.
    pub fn dot(self, other: Bits) -> bool {
        assert_eq!(self.width, other.width, "width mismatch in dot product");
        (self.value & other.value).count_ones() % 2 == 1
    }

    pub fn xor(self, other: Bits) -> Bits {
        assert_eq!(self.width, other.width, "width mismatch in xor");
        Bits {
            value: self.value ^ other.value,
            width: self.width,
        }
    }

    /// All bit strings of the given width in ascending value order.
    pub fn all(width: usize) -> impl Iterator<Item = Bits> {
        assert!((1..32).contains(&width));
        (0..1u64 << width).map(move |v| Bits {
            value: v as u32,
            width: width as u8,
        })
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.width() {
            write!(f, "{}", if self.get(pos) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_BIT_WIDTH {
            return Err(Error::Parse(format!("bad bit string length {}", s.len())));
        }
        let mut value = 0u32;
        for ch in s.chars() {
            value <<= 1;
            match ch {
                '0' => {}
                '1' => value |= 1,
                _ => return Err(Error::Parse(format!("invalid bit character {ch:?}"))),
            }
        }
        Bits::new(value, s.len())
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_register_order() {
        let b = Bits::new(0b101, 3).unwrap();
        assert_eq!(b.to_string(), "101");
        assert!(b.get(0));
        assert!(!b.get(1));
        assert!(b.get(2));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "0110", "101001"] {
            let b: Bits = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        assert!("".parse::<Bits>().is_err());
        assert!("012".parse::<Bits>().is_err());
    }

    #[test]
    fn unit_vectors() {
        // e_1 of width 3 is 100, e_3 is 001.
        assert_eq!(Bits::unit(3, 0).unwrap().to_string(), "100");
        assert_eq!(Bits::unit(3, 2).unwrap().to_string(), "001");
        assert!(Bits::unit(3, 3).is_err());
    }

    #[test]
    fn dot_is_parity_of_and() {
        let a: Bits = "110".parse().unwrap();
        let y: Bits = "101".parse().unwrap();
        assert!(a.dot(y)); // 1*1 + 1*0 + 0*1 = 1
        let z: Bits = "011".parse().unwrap();
        assert!(!a.dot(a.xor(a))); // anything · 0 = 0
        assert!(a.dot(z)); // 1*0 + 1*1 + 0*1 = 1
    }

    #[test]
    fn all_enumerates_in_order() {
        let v: Vec<Bits> = Bits::all(2).collect();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0].to_string(), "00");
        assert_eq!(v[3].to_string(), "11");
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(Bits::new(4, 2).is_err());
        assert!(Bits::new(0, 0).is_err());
        assert!(Bits::new(3, 2).is_ok());
    }
}
