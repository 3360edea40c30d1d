use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use super::SurfaceError;

/// Signed generator index: `a_i ↦ 2i - 1`, `b_i ↦ 2i`, negative for inverses.
pub type Letter = i8;

/// Word in the generators of a closed surface group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

fn order_code(x: Letter) -> u16 {
    // a1 < A1 < b1 < B1 < a2 < ...
    let g = x.unsigned_abs() as u16;
    let pair = (g - 1) / 2;
    let is_b = (g - 1) % 2;
    pair * 4 + is_b * 2 + u16::from(x < 0)
}

fn lex_less(a: &[Letter], b: &[Letter]) -> bool {
    a.iter().map(|&x| order_code(x)).lt(b.iter().map(|&x| order_code(x)))
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter(genus: u32, index: u32, is_b: bool, inverse: bool) -> Letter {
        let _ = genus;
        let v = (2 * index - if is_b { 0 } else { 1 }) as i8;
        if inverse {
            -v
        } else {
            v
        }
    }

    /// Parses tokens such as `a1 B2` or `a1b1A1B1`; capitals are inverses.
    pub fn parse(s: &str, genus: u32) -> Result<Word, SurfaceError> {
        let bad = || SurfaceError::Parse(s.to_string());
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '.').collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (is_b, inverse) = match c {
                'a' => (false, false),
                'A' => (false, true),
                'b' => (true, false),
                'B' => (true, true),
                '1' if chars[i..].iter().all(|&d| d == '1') && out.is_empty() => {
                    // "1" denotes the identity
                    i = chars.len();
                    continue;
                }
                _ => return Err(bad()),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let index: u32 = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            if index == 0 || index > genus {
                return Err(SurfaceError::GeneratorOutOfRange { index, genus });
            }
            out.push(Word::letter(genus, index, is_b, inverse));
        }
        Ok(Word(out))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::new();
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        free_reduce(&Word(v))
    }

    pub fn rotate(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % n);
        Word(v)
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Word {
        let mut best = self.clone();
        for k in 1..self.0.len() {
            let r = self.rotate(k);
            if lex_less(&r.0, &best.0) {
                best = r;
            }
        }
        best
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.0 {
            let g = x.unsigned_abs();
            let idx = (g + 1) / 2;
            let ch = match (g % 2 == 0, x < 0) {
                (false, false) => 'a',
                (false, true) => 'A',
                (true, false) => 'b',
                (true, true) => 'B',
            };
            write!(f, "{ch}{idx}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &x in &w.0 {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word(out)
}

/// Free reduction followed by cancellation of inverse letters at the two ends.
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut v = free_reduce(w).0;
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.remove(0);
        v.pop();
    }
    Word(v)
}

/// Standard presentation `[a1, b1] ... [ag, bg]` of the genus-`g` surface group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub genus: u32,
    relator: Word,
    /// All rotations of the relator and of its inverse.
    symmetrized: Vec<Word>,
}

impl SurfacePresentation {
    pub fn new(genus: u32) -> Result<SurfacePresentation, SurfaceError> {
        if !(2..=16).contains(&genus) {
            return Err(SurfaceError::GenusOutOfRange(genus));
        }
        let mut r = Vec::new();
        for i in 1..=genus {
            let a = Word::letter(genus, i, false, false);
            let b = Word::letter(genus, i, true, false);
            r.extend_from_slice(&[a, b, -a, -b]);
        }
        let relator = Word(r);
        let mut symmetrized = Vec::new();
        for base in [relator.clone(), relator.inverse()] {
            for k in 0..base.len() {
                symmetrized.push(base.rotate(k));
            }
        }
        Ok(SurfacePresentation { genus, relator, symmetrized })
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn letters(&self) -> Vec<Letter> {
        (1..=self.rank() as i8).flat_map(|x| [x, -x]).collect()
    }

    fn half(&self) -> usize {
        2 * self.genus as usize
    }

    /// Longest prefix of `w[start..]` shared with some symmetrized relator.
    fn best_match(&self, w: &[Letter], start: usize, cyclic: bool) -> Option<(usize, &Word)> {
        let n = w.len();
        let mut best: Option<(usize, &Word)> = None;
        for r in &self.symmetrized {
            let limit = if cyclic { n.min(r.len()) } else { (n - start).min(r.len()) };
            let mut m = 0;
            while m < limit && w[(start + m) % n] == r.0[m] {
                m += 1;
            }
            if best.map_or(true, |(bm, _)| m > bm) {
                best = Some((m, r));
            }
        }
        best
    }

    /// Dehn's algorithm: replaces any subword longer than half a relator by the shorter
    /// complement until none is left. The result is empty iff `w` is trivial.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut v = free_reduce(w).0;
        'outer: loop {
            for start in 0..v.len() {
                if let Some((m, r)) = self.best_match(&v, start, false) {
                    if m > self.half() {
                        // r = u·s with u = v[start..start+m]; u = s^{-1}
                        let replacement: Vec<Letter> = r.0[m..].iter().rev().map(|x| -x).collect();
                        v.splice(start..start + m, replacement);
                        v = free_reduce(&Word(v)).0;
                        continue 'outer;
                    }
                }
            }
            return Word(v);
        }
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// Cyclic version of Dehn's algorithm, matching subwords that wrap around.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> Word {
        let mut v = cyclic_reduce(&self.dehn_reduce(w)).0;
        'outer: loop {
            let n = v.len();
            for start in 0..n {
                if let Some((m, r)) = self.best_match(&v, start, true) {
                    if m > self.half() && m <= n {
                        let replacement: Vec<Letter> = r.0[m..].iter().rev().map(|x| -x).collect();
                        let mut rot = v.clone();
                        rot.rotate_left(start);
                        rot.splice(0..m, replacement);
                        v = cyclic_reduce(&Word(rot)).0;
                        continue 'outer;
                    }
                }
            }
            return Word(v);
        }
    }

    /// Words of the same length reachable by swapping an exact half relator in a
    /// rotation for the complementary half.
    fn half_flips(&self, w: &Word) -> Vec<Word> {
        let n = w.len();
        let h = self.half();
        let mut out = Vec::new();
        if n < h {
            return out;
        }
        for start in 0..n {
            for r in &self.symmetrized {
                if (0..h).all(|m| w.0[(start + m) % n] == r.0[m]) {
                    let mut rot = w.rotate(start).0;
                    let replacement: Vec<Letter> = r.0[h..].iter().rev().map(|x| -x).collect();
                    rot.splice(0..h, replacement);
                    out.push(Word(rot));
                }
            }
        }
        out
    }

    /// Canonical key of the conjugacy class of `w`: the least rotation of the shortest
    /// words reachable by cyclic Dehn reduction and half-relator swaps.
    pub fn class_key(&self, w: &Word) -> Word {
        let start = self.cyclic_dehn_reduce(w).least_rotation();
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some(cur) = queue.pop_front() {
            for f in self.half_flips(&cur) {
                let next = self.cyclic_dehn_reduce(&f).least_rotation();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let min_len = seen.iter().map(|w| w.len()).min().unwrap_or(0);
        let mut best: Option<Word> = None;
        for w in seen.into_iter().filter(|w| w.len() == min_len) {
            if best.as_ref().map_or(true, |b| lex_less(&w.0, &b.0)) {
                best = Some(w);
            }
        }
        best.unwrap_or_default()
    }

    /// Cyclically reduced words of length exactly `n` (as words in the free group).
    pub fn cyclically_reduced_words(&self, n: usize) -> Vec<Word> {
        let letters = self.letters();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(letters: &[Letter], n: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
            if cur.len() == n {
                if n < 2 || cur[0] != -cur[n - 1] {
                    out.push(Word(cur.clone()));
                }
                return;
            }
            for &x in letters {
                if cur.last() == Some(&-x) {
                    continue;
                }
                cur.push(x);
                rec(letters, n, cur, out);
                cur.pop();
            }
        }
        rec(&letters, n, &mut cur, &mut out);
        out
    }

    /// One key per nontrivial conjugacy class with a representative of length `<= max_len`.
    pub fn conjugacy_classes(&self, max_len: usize) -> Vec<Word> {
        let mut keys = BTreeSet::new();
        for n in 1..=max_len {
            for w in self.cyclically_reduced_words(n) {
                let k = self.class_key(&w);
                if !k.is_empty() {
                    keys.insert(k);
                }
            }
        }
        let mut v: Vec<Word> = keys.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| if lex_less(&a.0, &b.0) { std::cmp::Ordering::Less } else if a == b { std::cmp::Ordering::Equal } else { std::cmp::Ordering::Greater }));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> SurfacePresentation {
        SurfacePresentation::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("a1b1A1B1").0, vec![1, 2, -1, -2]);
        assert_eq!(w("a1 B2").to_string(), "a1B2");
        assert_eq!(w("1"), Word::empty());
        assert!(Word::parse("c1", 2).is_err());
        assert!(Word::parse("a3", 2).is_err());
    }

    #[test]
    fn relator_and_rotations_reduce_to_identity() {
        let p = g2();
        assert!(p.is_trivial(p.relator()));
        assert!(p.is_trivial(&p.relator().rotate(3)));
        assert!(p.is_trivial(&p.relator().inverse()));
        assert_eq!(p.dehn_reduce(&w("a1")), w("a1"));
        // a1 b1 A1 B1 a2 b2 A2 = b2 (five letters of a relator rotation replaced by three)
        assert_eq!(p.dehn_reduce(&w("a1b1A1B1a2b2A2")), w("b2"));
    }

    #[test]
    fn single_letters_are_eight_classes() {
        let p = g2();
        let classes = p.conjugacy_classes(1);
        assert_eq!(classes.len(), 8);
        assert_ne!(p.class_key(&w("a1")), p.class_key(&w("A1")));
        assert!(p.conjugacy_classes(0).is_empty());
    }

    #[test]
    fn conjugates_share_a_key() {
        let p = g2();
        let base = w("a1b2");
        let key = p.class_key(&base);
        for h in ["b1", "a2B1", "A1A1b2", "b1a2b2a1"] {
            let h = w(h);
            let c = h.concat(&base).concat(&h.inverse());
            assert_eq!(p.class_key(&c), key, "conjugate by {h}");
        }
        // a1b1 and b1a1 are rotations of each other
        assert_eq!(p.class_key(&w("a1b1")), p.class_key(&w("b1a1")));
    }

    #[test]
    fn half_relator_swap_preserves_class() {
        let p = g2();
        // a1b1A1B1 = B2A2b2a2... both halves of the relator give the same element up to inverse
        let lhs = w("a1b1A1B1");
        let rhs = w("b2a2B2A2");
        assert_eq!(p.class_key(&lhs), p.class_key(&rhs));
    }
}
