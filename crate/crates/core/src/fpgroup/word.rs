use std::fmt;

/// A letter is a nonzero signed generator index: `+i` is generator `i` (1-based),
/// `-i` its inverse.
pub type Letter = i32;

/// Coset-table column of a letter: `2(i-1)` for generator `i`, `2(i-1)+1` for its inverse.
#[inline]
pub fn letter_column(x: Letter) -> usize {
    debug_assert!(x != 0);
    let g = (x.unsigned_abs() - 1) as usize;
    2 * g + usize::from(x < 0)
}

/// Inverse of [`letter_column`].
#[inline]
pub fn column_letter(col: usize) -> Letter {
    let g = (col / 2 + 1) as Letter;
    if col.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// Sort key placing `a < a^-1 < b < b^-1 < ...`.
#[inline]
pub fn letter_key(x: Letter) -> (u32, bool) {
    (x.unsigned_abs(), x < 0)
}

/// A freely reduced word in the free group.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, freely reducing the letters. Panics on a zero letter.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            assert!(x != 0, "zero is not a generator letter");
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index appearing in the word.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self^k`, with negative `k` meaning powers of the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let n = k.unsigned_abs() as usize;
        Word::new(base.0.iter().copied().cycle().take(base.len() * n))
    }

    /// Strips conjugating letters so the first and last letters are not mutually inverse.
    pub fn cyclically_reduce(&self) -> Word {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j >= i + 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != -self.0[self.0.len() - 1]
    }

    /// Rotation starting at position `i`.
    pub fn rotate(&self, i: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(i);
        Word(v)
    }

    /// Relabels generators through `perm` (`perm[i-1]` is the new 1-based index of
    /// generator `i`).
    pub fn relabel(&self, perm: &[u32]) -> Word {
        Word(
            self.0
                .iter()
                .map(|&x| {
                    let g = perm[(x.unsigned_abs() - 1) as usize] as Letter;
                    if x < 0 {
                        -g
                    } else {
                        g
                    }
                })
                .collect(),
        )
    }

    /// Formats the word with the given generator names, collapsing runs into powers.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == x {
                run += 1;
            }
            let name = names
                .get((x.unsigned_abs() - 1) as usize)
                .cloned()
                .unwrap_or_else(|| format!("x{}", x.unsigned_abs()));
            let exp = if x < 0 { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 { name } else { format!("{name}^{exp}") });
            i += run;
        }
        parts.join(" ")
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::new(letters.iter().copied())
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(free_reduce(&[1, -1, 2]).letters(), &[2]);
        assert!(free_reduce(&[]).is_empty());
        assert!(free_reduce(&[1, 2, -2, -1]).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::new([2, 1, 1, -2]);
        assert_eq!(w.cyclically_reduce().letters(), &[1, 1]);
        assert!(!w.is_cyclically_reduced());
        assert_eq!(Word::new([1, 2, -1]).cyclically_reduce().letters(), &[2]);
    }

    #[test]
    fn powers_and_inverse() {
        let ab = Word::new([1, 2]);
        assert_eq!(ab.pow(3).len(), 6);
        assert_eq!(ab.pow(-1), ab.inverse());
        assert_eq!(ab.inverse().letters(), &[-2, -1]);
        assert!(ab.mul(&ab.inverse()).is_empty());
        assert_eq!(ab.pow(0), Word::identity());
    }

    #[test]
    fn columns_round_trip() {
        for x in [1, -1, 2, -2, 7, -7] {
            assert_eq!(column_letter(letter_column(x)), x);
        }
        assert_eq!(letter_column(-1) ^ 1, letter_column(1));
    }

    #[test]
    fn display() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(Word::new([1, 1, 1, -2, 1]).display_with(&names), "a^3 b^-1 a");
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3), Just(-3)], 0..40)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn free_reduce_is_idempotent(v in letters()) {
            let once = free_reduce(&v);
            let twice = free_reduce(once.letters());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.letters().windows(2).all(|p| p[0] != -p[1]));
        }

        #[test]
        fn inverse_cancels(v in letters()) {
            let w = free_reduce(&v);
            prop_assert!(w.mul(&w.inverse()).is_empty());
        }
    }
}
