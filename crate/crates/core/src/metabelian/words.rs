//! Free-group words on `b, s, t` with `a^g = g^-1 a g` and
//! `[a, b] = a^-1 b^-1 a b`.

use std::fmt;

pub const B: i32 = 1;
pub const S: i32 = 2;
pub const T: i32 = 3;

/// A freely reduced word; letter `-x` is the inverse of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: i32) -> Self {
        assert!(x != 0);
        Word(vec![x])
    }

    pub fn from_letters(xs: &[i32]) -> Self {
        Word::identity().mul(&Word(xs.to_vec()))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e < 0 { self.inv() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self^g = g^-1 self g`.
    pub fn conj(&self, g: &Word) -> Word {
        g.inv().mul(self).mul(g)
    }

    /// Whether `self` is a cyclic rotation of `r` or of `r^-1`, hence a
    /// conjugate of a relator.
    pub fn is_rotation_of_relator(&self, r: &Word) -> bool {
        let n = self.0.len();
        if n != r.0.len() {
            return false;
        }
        [r.clone(), r.inv()]
            .iter()
            .any(|c| (0..n).any(|k| (0..n).all(|i| self.0[i] == c.0[(i + k) % n])))
    }
}

/// `[a, b] = a^-1 b^-1 a b`.
pub fn comm(a: &Word, b: &Word) -> Word {
    a.inv().mul(&b.inv()).mul(a).mul(b)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut e = 0i32;
            while i < self.0.len() && self.0[i] == x {
                e += 1;
                i += 1;
            }
            let name = match x.abs() {
                B => "b",
                S => "s",
                T => "t",
                _ => "?",
            };
            let e = if x < 0 { -e } else { e };
            parts.push(if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            });
        }
        write!(f, "{}", parts.join(" "))
    }
}
