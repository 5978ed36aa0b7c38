use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An element of the index set I = {1, ..., n, nbar, ..., 1bar}.
///
/// The rank `n` is not stored in the entry itself; operations that depend on
/// it take `n` as an argument.
// The derived Ord is the serialization order (unbarred by value, then barred
// by value), NOT the partial order on I; use `cmp_entries` for the latter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Entry {
    Unbarred(u8),
    Barred(u8),
}

/// Result of comparing two entries in the partial order
/// `1 < 2 < ... < n-1 < {n, nbar} < n-1bar < ... < 1bar`,
/// where `n` and `nbar` are incomparable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EntryOrd {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Entry {
    /// All 2n entries, in the canonical linear-ish listing
    /// `1, ..., n, nbar, ..., 1bar`.
    pub fn all(n: u8) -> Vec<Entry> {
        let mut v: Vec<Entry> = (1..=n).map(Entry::Unbarred).collect();
        v.extend((1..=n).rev().map(Entry::Barred));
        v
    }

    pub fn is_barred(self) -> bool {
        matches!(self, Entry::Barred(_))
    }

    pub fn value(self) -> u8 {
        match self {
            Entry::Unbarred(i) | Entry::Barred(i) => i,
        }
    }

    /// Level in the order diagram: unbarred i has level i, barred i has level
    /// 2n+1-i.  Entries at distinct levels compare by level; the two entries
    /// at levels n and n+1 (that is, n and nbar) are incomparable.
    fn level(self, n: u8) -> u16 {
        match self {
            Entry::Unbarred(i) => i as u16,
            Entry::Barred(i) => 2 * n as u16 + 1 - i as u16,
        }
    }

    /// The partial order on I (see [`EntryOrd`]).
    pub fn cmp_entries(self, other: Entry, n: u8) -> EntryOrd {
        if self == other {
            return EntryOrd::Equal;
        }
        // The middle pair {n, nbar} is incomparable.
        if self.value() == n && other.value() == n {
            return EntryOrd::Incomparable;
        }
        match self.level(n).cmp(&other.level(n)) {
            Ordering::Less => EntryOrd::Less,
            Ordering::Greater => EntryOrd::Greater,
            Ordering::Equal => unreachable!("distinct entries share a level only at n/nbar"),
        }
    }

    /// `self` precedes-or-equals `other` (x <= y in the partial order).
    pub fn le(self, other: Entry, n: u8) -> bool {
        matches!(self.cmp_entries(other, n), EntryOrd::Less | EntryOrd::Equal)
    }

    /// `self` strictly precedes `other`.
    pub fn lt(self, other: Entry, n: u8) -> bool {
        self.cmp_entries(other, n) == EntryOrd::Less
    }

    /// `self` succeeds-or-equals `other`.
    pub fn ge(self, other: Entry, n: u8) -> bool {
        matches!(self.cmp_entries(other, n), EntryOrd::Greater | EntryOrd::Equal)
    }

    /// `self` strictly succeeds `other`.
    pub fn gt(self, other: Entry, n: u8) -> bool {
        self.cmp_entries(other, n) == EntryOrd::Greater
    }

    /// Canonical total order used for sorting monomial factors; this is NOT
    /// the partial order on I, just a fixed serialization order.
    pub fn sort_key(self) -> (u8, u8) {
        match self {
            Entry::Unbarred(i) => (0, i),
            Entry::Barred(i) => (1, i),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Unbarred(i) => write!(f, "{i}"),
            Entry::Barred(i) => write!(f, "{i}bar"),
        }
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (digits, barred) = match s.strip_suffix("bar") {
            Some(d) => (d, true),
            None => (s, false),
        };
        let i: u8 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad entry {s:?}")))?;
        if i == 0 {
            return Err(Error::Parse(format!("bad entry {s:?}: index must be >= 1")));
        }
        Ok(if barred { Entry::Barred(i) } else { Entry::Unbarred(i) })
    }
}

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_has_2n_members() {
        for n in 1..=5 {
            assert_eq!(Entry::all(n).len(), 2 * n as usize);
        }
    }

    #[test]
    fn order_examples() {
        let n = 3;
        assert_eq!(
            Entry::Unbarred(1).cmp_entries(Entry::Barred(1), n),
            EntryOrd::Less
        );
        assert_eq!(
            Entry::Unbarred(3).cmp_entries(Entry::Barred(3), n),
            EntryOrd::Incomparable
        );
        assert_eq!(
            Entry::Barred(3).cmp_entries(Entry::Barred(2), n),
            EntryOrd::Less
        );
        assert_eq!(
            Entry::Unbarred(2).cmp_entries(Entry::Barred(3), n),
            EntryOrd::Less
        );
        assert_eq!(
            Entry::Unbarred(2).cmp_entries(Entry::Unbarred(2), n),
            EntryOrd::Equal
        );
    }

    /// The order is a strict partial order: irreflexive (modulo Equal),
    /// antisymmetric and transitive; exhaustive over I^3 for n <= 5.
    #[test]
    fn strict_partial_order() {
        for n in 1..=5u8 {
            let all = Entry::all(n);
            for &x in &all {
                assert_eq!(x.cmp_entries(x, n), EntryOrd::Equal);
                for &y in &all {
                    let xy = x.cmp_entries(y, n);
                    let yx = y.cmp_entries(x, n);
                    match xy {
                        EntryOrd::Less => assert_eq!(yx, EntryOrd::Greater),
                        EntryOrd::Greater => assert_eq!(yx, EntryOrd::Less),
                        EntryOrd::Equal => assert_eq!(x, y),
                        EntryOrd::Incomparable => assert_eq!(yx, EntryOrd::Incomparable),
                    }
                    for &z in &all {
                        if x.lt(y, n) && y.lt(z, n) {
                            assert!(x.lt(z, n), "transitivity {x} {y} {z}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        for n in 1..=4u8 {
            for e in Entry::all(n) {
                let s = e.to_string();
                let back: Entry = s.parse().unwrap();
                assert_eq!(e, back);
            }
        }
        assert_eq!("2bar".parse::<Entry>().unwrap(), Entry::Barred(2));
        assert!("0".parse::<Entry>().is_err());
        assert!("xbar".parse::<Entry>().is_err());
    }
}
