use std::cmp::Ordering;
use std::fmt;

use crate::algebra::Generator;

/// Largest number of Witt slots a key can carry.
pub const MAX_SLOTS: usize = 4;

/// Canonical index of a cochain coefficient: strictly ascending Witt indices,
/// plus an optional central slot (which sorts after every Witt generator).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CochainKey {
    idx: [i64; MAX_SLOTS],
    len: u8,
    central: bool,
}

impl CochainKey {
    /// `None` unless `witt` is strictly ascending and fits.
    pub fn new(witt: &[i64], central: bool) -> Option<Self> {
        if witt.len() > MAX_SLOTS || witt.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let mut idx = [0; MAX_SLOTS];
        idx[..witt.len()].copy_from_slice(witt);
        Some(CochainKey { idx, len: witt.len() as u8, central })
    }

    pub fn witt(&self) -> &[i64] {
        &self.idx[..self.len as usize]
    }

    pub fn has_central_slot(&self) -> bool {
        self.central
    }

    pub fn arity(&self) -> usize {
        self.len as usize + usize::from(self.central)
    }

    /// Total degree; the central slot contributes 0.
    pub fn degree(&self) -> i64 {
        self.witt().iter().sum()
    }

    /// Largest `|index|` among the Witt slots (0 for none).
    pub fn reach(&self) -> i64 {
        self.witt().iter().map(|i| i.abs()).max().unwrap_or(0)
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self.witt().iter().map(|&i| Generator::Witt(i)).collect();
        if self.central {
            out.push(Generator::Central);
        }
        out
    }

    /// Sorts `args` into canonical order. Returns the key and the sign of the
    /// sorting permutation, or `None` if a generator repeats.
    pub fn canonicalize(args: &[Generator]) -> Option<(CochainKey, i32)> {
        if args.len() > MAX_SLOTS + 1 {
            return None;
        }
        let mut buf = [Generator::Central; MAX_SLOTS + 1];
        let n = args.len();
        buf[..n].copy_from_slice(args);
        // insertion sort; each adjacent swap flips the sign
        let mut sign = 1;
        for i in 1..n {
            let mut j = i;
            while j > 0 && buf[j - 1] > buf[j] {
                buf.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if buf[..n].windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut idx = [0; MAX_SLOTS];
        let mut len = 0;
        let mut central = false;
        for g in &buf[..n] {
            match *g {
                Generator::Witt(i) => {
                    if len == MAX_SLOTS {
                        return None;
                    }
                    idx[len] = i;
                    len += 1;
                }
                Generator::Central => central = true,
            }
        }
        Some((CochainKey { idx, len: len as u8, central }, sign))
    }
}

impl Ord for CochainKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.witt().cmp(other.witt()).then(self.central.cmp(&other.central))
    }
}

impl PartialOrd for CochainKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CochainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl serde::Serialize for CochainKey {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for CochainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.witt() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        if self.central {
            if !first {
                f.write_str(" ")?;
            }
            f.write_str("t")?;
        }
        Ok(())
    }
}

/// Which coordinate of the value a coefficient describes.
///
/// Values of a homogeneous cochain at a fixed tuple lie in a single graded
/// piece of the module. That piece is one-dimensional except for the degree-0
/// piece of the adjoint Virasoro module, spanned by `ê_0` and `t`.
/// `Main` is the scalar (trivial module) or the `e_{s+d}` coordinate;
/// `Central` is the `t` coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Main,
    Central,
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::{Central, Witt};

    #[test]
    fn canonical_order_and_sign() {
        let (k, s) = CochainKey::canonicalize(&[Witt(-1), Witt(1), Witt(0)]).unwrap();
        assert_eq!(k.witt(), &[-1, 0, 1]);
        assert_eq!(s, -1);
        let (k, s) = CochainKey::canonicalize(&[Witt(1), Witt(-1), Witt(0)]).unwrap();
        assert_eq!(k.witt(), &[-1, 0, 1]);
        assert_eq!(s, 1);
        let (k, s) = CochainKey::canonicalize(&[Central, Witt(2), Witt(-2)]).unwrap();
        assert_eq!((k.witt(), k.has_central_slot(), s), (&[-2, 2][..], true, -1));
        assert!(CochainKey::canonicalize(&[Witt(3), Witt(3), Witt(0)]).is_none());
        assert!(CochainKey::canonicalize(&[Central, Witt(0), Central]).is_none());
    }

    #[test]
    fn ordering_puts_central_slot_last() {
        let a = CochainKey::new(&[-2, 2], false).unwrap();
        let b = CochainKey::new(&[-2, 2], true).unwrap();
        let c = CochainKey::new(&[-1, 1], false).unwrap();
        assert!(a < b && b < c);
        assert_eq!(b.to_string(), "-2 2 t");
        assert!(CochainKey::new(&[1, 1], false).is_none());
    }
}
