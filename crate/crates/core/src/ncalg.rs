//! Noncommutative polynomials over a finite alphabet and the free Lie algebra
//! structure on `{a, b}`.
//!
//! Words are compared graded-lexicographically (by length, then letter by
//! letter in alphabet order `a < b`), which fixes every serialization and
//! elimination order in the crate. Two alphabets are in play: `{a, b}` and a
//! truncated series `b_1, ..., b_N` used by the star projection.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;
use crate::{Error, Result};

/// The alphabet a noncommutative polynomial is written over.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Alphabet {
    /// The two-letter alphabet `a < b`.
    Ab,
    /// Letters `b1 < b2 < ... < bN`. Constructors reject indices beyond the
    /// truncation.
    BSeries { max: usize },
}

pub const A: u8 = 0;
pub const B: u8 = 1;

impl Alphabet {
    pub fn letter_count(&self) -> usize {
        match self {
            Alphabet::Ab => 2,
            Alphabet::BSeries { max } => *max,
        }
    }

    pub fn letter_name(&self, letter: u8) -> String {
        match self {
            Alphabet::Ab => {
                if letter == A {
                    "a".into()
                } else {
                    "b".into()
                }
            }
            Alphabet::BSeries { .. } => format!("b{}", letter as usize + 1),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.letter_count())
            .map(|i| self.letter_name(i as u8))
            .collect()
    }

    pub fn from_names(names: &[String]) -> Result<Alphabet> {
        if names.len() == 2 && names[0] == "a" && names[1] == "b" {
            return Ok(Alphabet::Ab);
        }
        for (i, n) in names.iter().enumerate() {
            if *n != format!("b{}", i + 1) {
                return Err(Error::Parse(format!("unknown alphabet {names:?}")));
            }
        }
        Ok(Alphabet::BSeries { max: names.len() })
    }

    /// Parses a word written as concatenated letter names, e.g. `"aab"` or
    /// `"b1b2b1"`. The empty string is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Vec<u8>> {
        let bad = |s: &str| Error::Parse(format!("invalid word `{s}`"));
        let mut letters = Vec::new();
        match self {
            Alphabet::Ab => {
                for c in s.chars() {
                    match c {
                        'a' => letters.push(A),
                        'b' => letters.push(B),
                        _ => return Err(bad(s)),
                    }
                }
            }
            Alphabet::BSeries { max } => {
                let bytes = s.as_bytes();
                let mut i = 0;
                while i < bytes.len() {
                    if bytes[i] != b'b' {
                        return Err(bad(s));
                    }
                    i += 1;
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let idx: usize = s[start..i].parse().map_err(|_| bad(s))?;
                    if idx == 0 || idx > *max {
                        return Err(Error::Domain(format!(
                            "letter b{idx} outside truncation b1..b{max}"
                        )));
                    }
                    letters.push((idx - 1) as u8);
                }
            }
        }
        Ok(letters)
    }

    pub fn render_word(&self, word: &[u8]) -> String {
        word.iter().map(|&l| self.letter_name(l)).collect()
    }
}

/// A word over an alphabet, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finitely supported rational linear combination of words.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NcPolyRepr", into = "NcPolyRepr")]
pub struct NcPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    /// The empty-word unit of the enveloping algebra.
    pub fn one(alphabet: Alphabet) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(Word(vec![]), Rat::one());
        p
    }

    pub fn monomial(alphabet: Alphabet, letters: Vec<u8>, coeff: Rat) -> Self {
        let n = alphabet.letter_count();
        assert!(
            letters.iter().all(|&l| (l as usize) < n),
            "letter outside alphabet"
        );
        let mut p = Self::zero(alphabet);
        p.add_term(Word(letters), coeff);
        p
    }

    /// Single letter as a polynomial.
    pub fn letter(alphabet: Alphabet, l: u8) -> Self {
        Self::monomial(alphabet, vec![l], Rat::one())
    }

    /// Parses a word in letter-name notation and returns it with coefficient 1.
    pub fn word(alphabet: Alphabet, s: &str) -> Result<Self> {
        let letters = alphabet.parse_word(s)?;
        Ok(Self::monomial(alphabet, letters, Rat::one()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &[u8]) -> Rat {
        self.terms
            .get(&Word(word.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_alphabet(&self, other: &Self) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_alphabet(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_alphabet(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.alphabet.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * s;
        }
        out
    }

    /// Concatenation product of the enveloping algebra, extended bilinearly.
    pub fn nc_mul(&self, other: &Self) -> Self {
        self.assert_same_alphabet(other);
        let mut out = Self::zero(self.alphabet.clone());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(Word(w), c1 * c2);
            }
        }
        out
    }

    /// `[P, Q] = PQ - QP`.
    pub fn lie_bracket(&self, other: &Self) -> Self {
        self.nc_mul(other).sub(&other.nc_mul(self))
    }

    /// The common word length, if the polynomial is homogeneous. Zero is
    /// homogeneous of every degree; `Some(0)` is returned for it.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Some(0);
        };
        let n = first.0.len();
        it.all(|w| w.0.len() == n).then_some(n)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.0.len()).max().unwrap_or(0)
    }

    /// Number of `b` letters in a word; only meaningful over `{a, b}`.
    pub fn word_depth(word: &[u8]) -> usize {
        word.iter().filter(|&&l| l == B).count()
    }

    /// The common depth, if depth-homogeneous (alphabet `{a,b}`).
    pub fn homogeneous_depth(&self) -> Option<usize> {
        assert_eq!(self.alphabet, Alphabet::Ab);
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Some(0);
        };
        let d = Self::word_depth(&first.0);
        it.all(|w| Self::word_depth(&w.0) == d).then_some(d)
    }

    /// Splits into weight-homogeneous components, keyed by degree.
    pub fn degree_components(&self) -> BTreeMap<usize, NcPoly> {
        let mut out: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.0.len())
                .or_insert_with(|| NcPoly::zero(self.alphabet.clone()))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Splits into depth-homogeneous components, keyed by number of `b`'s.
    pub fn depth_components(&self) -> BTreeMap<usize, NcPoly> {
        assert_eq!(self.alphabet, Alphabet::Ab);
        let mut out: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(Self::word_depth(&w.0))
                .or_insert_with(|| NcPoly::zero(self.alphabet.clone()))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Left-to-right Dynkin bracketing: `w_1 w_2 ... w_n` goes to
    /// `[...[[w_1, w_2], w_3], ..., w_n]`, extended linearly.
    pub fn dynkin(&self) -> NcPoly {
        let mut out = NcPoly::zero(self.alphabet.clone());
        for (w, c) in &self.terms {
            if w.0.is_empty() {
                continue;
            }
            let mut p = NcPoly::letter(self.alphabet.clone(), w.0[0]);
            for &l in &w.0[1..] {
                // [p, l] with a single letter on the right
                let mut next = NcPoly::zero(self.alphabet.clone());
                for (pw, pc) in &p.terms {
                    let mut right = pw.0.clone();
                    right.push(l);
                    next.add_term(Word(right), pc.clone());
                    let mut left = Vec::with_capacity(pw.0.len() + 1);
                    left.push(l);
                    left.extend_from_slice(&pw.0);
                    next.add_term(Word(left), -pc);
                }
                p = next;
            }
            out = out.add(&p.scale(c));
        }
        out
    }

    /// Dynkin–Specht–Wever membership test: every homogeneous degree-`n`
    /// component `P_n` must satisfy `dynkin(P_n) = n * P_n`.
    pub fn is_lie(&self) -> bool {
        for (n, comp) in self.degree_components() {
            if n == 0 {
                return false; // nonzero constant component
            }
            if comp.dynkin() != comp.scale(&Rat::from_int(n as i64)) {
                return false;
            }
        }
        true
    }

    /// Splits an `{a,b}` word as `a^{i_0} b a^{i_1} b ... a^{i_{r-1}} b a^{i_r}`
    /// and returns `(i_0, ..., i_r)`; `r` is the number of `b`'s.
    fn a_run_profile(word: &[u8]) -> Vec<usize> {
        let mut runs = vec![0usize];
        for &l in word {
            if l == A {
                *runs.last_mut().unwrap() += 1;
            } else {
                runs.push(0);
            }
        }
        runs
    }

    fn word_from_runs(runs: &[usize]) -> Vec<u8> {
        let mut w = Vec::new();
        for (i, &r) in runs.iter().enumerate() {
            w.extend(std::iter::repeat_n(A, r));
            if i + 1 != runs.len() {
                w.push(B);
            }
        }
        w
    }

    /// The push operator: `a^{i_0} b ... a^{i_{r-1}} b a^{i_r}` goes to
    /// `a^{i_r} b a^{i_0} b ... b a^{i_{r-1}}`, extended linearly. Words with
    /// no `b` are fixed.
    pub fn push(&self) -> NcPoly {
        assert_eq!(self.alphabet, Alphabet::Ab);
        let mut out = NcPoly::zero(Alphabet::Ab);
        for (w, c) in &self.terms {
            if Self::word_depth(&w.0) == 0 {
                out.add_term(w.clone(), c.clone());
                continue;
            }
            let mut runs = Self::a_run_profile(&w.0);
            let last = runs.pop().unwrap();
            runs.insert(0, last);
            out.add_term(Word(Self::word_from_runs(&runs)), c.clone());
        }
        out
    }

    pub fn is_push_invariant(&self) -> bool {
        self.push() == *self
    }

    /// The star projection into the `b_i` alphabet: words ending in `a` are
    /// dropped, a surviving word `a^{n_0} b a^{n_1} b ... a^{n_{d-1}} b`
    /// becomes `b_{n_0+1} b_{n_1+1} ... b_{n_{d-1}+1}`, and the correction
    /// `sum_i ((-1)^{i-1}/i) (P | a^{i-1} b) b_1^i` is added.
    pub fn star(&self) -> NcPoly {
        assert_eq!(self.alphabet, Alphabet::Ab);
        let max = self.max_degree().max(1);
        let target = Alphabet::BSeries { max };
        let mut out = NcPoly::zero(target.clone());
        for (w, c) in &self.terms {
            if w.0.last() != Some(&B) {
                continue;
            }
            let runs = Self::a_run_profile(&w.0);
            // last run is empty (word ends in b); the rest are the n_j
            let letters: Vec<u8> = runs[..runs.len() - 1].iter().map(|&n| n as u8).collect();
            out.add_term(Word(letters), c.clone());
        }
        // depth-1 correction
        for (w, c) in &self.terms {
            if Self::word_depth(&w.0) == 1 && w.0.last() == Some(&B) {
                let i = w.0.len(); // word is a^{i-1} b
                let sign = if i % 2 == 1 { 1 } else { -1 };
                let coeff = c * &Rat::new(sign, i as i64);
                out.add_term(Word(vec![0u8; i]), coeff);
            }
        }
        out
    }

    /// Star projection of a depth-homogeneous polynomial of depth `d`.
    pub fn star_projection(&self, d: usize) -> Result<NcPoly> {
        match self.homogeneous_depth() {
            Some(found) if found == d || self.is_zero() => Ok(self.star()),
            _ => Err(Error::NotHomogeneous(format!(
                "expected depth-{d} homogeneous input"
            ))),
        }
    }

    /// Coordinates in the basis of depth-`r` C-monomials
    /// `C_{i_1} ... C_{i_r}`, `C_i = ad(a)^{i-1}(b)`.
    ///
    /// Triangular elimination on the lex-least word ending in `b`: the
    /// expansion of `C_{i_1} ... C_{i_r}` contains
    /// `a^{i_1-1} b ... a^{i_r-1} b` with coefficient exactly 1 and every
    /// other word ending in `b` is lexicographically larger.
    pub fn rewrite_in_c(&self, depth: usize) -> Result<BTreeMap<Vec<u32>, Rat>> {
        assert_eq!(self.alphabet, Alphabet::Ab);
        if self.is_zero() {
            return Ok(BTreeMap::new());
        }
        if self.homogeneous_depth() != Some(depth) || depth == 0 {
            if depth == 0 {
                return Err(Error::NotInCSpan);
            }
            return Err(Error::NotHomogeneous(format!(
                "expected depth-{depth} homogeneous input"
            )));
        }
        let mut rem = self.clone();
        let mut coords = BTreeMap::new();
        while let Some((w, c)) = rem
            .terms
            .iter()
            .find(|(w, _)| w.0.last() == Some(&B))
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            let runs = Self::a_run_profile(&w.0);
            let indices: Vec<u32> = runs[..runs.len() - 1]
                .iter()
                .map(|&j| (j + 1) as u32)
                .collect();
            rem = rem.sub(&c_monomial(&indices).scale(&c));
            coords.insert(indices, c);
        }
        if rem.is_zero() {
            Ok(coords)
        } else {
            Err(Error::NotInCSpan)
        }
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let name = self.alphabet.render_word(&w.0);
            if w.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct NcPolyRepr {
    alphabet: Vec<String>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    word: String,
    coeff: Rat,
}

impl From<NcPoly> for NcPolyRepr {
    fn from(p: NcPoly) -> Self {
        NcPolyRepr {
            alphabet: p.alphabet.names(),
            terms: p
                .terms
                .iter()
                .map(|(w, c)| TermRepr {
                    word: p.alphabet.render_word(&w.0),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<NcPolyRepr> for NcPoly {
    type Error = Error;
    fn try_from(r: NcPolyRepr) -> Result<Self> {
        let alphabet = Alphabet::from_names(&r.alphabet)?;
        let mut p = NcPoly::zero(alphabet.clone());
        for t in r.terms {
            let letters = alphabet.parse_word(&t.word)?;
            p.add_term(Word(letters), t.coeff);
        }
        Ok(p)
    }
}

/// `C_i = ad(a)^{i-1}(b)` expanded as a word polynomial, `i >= 1`.
pub fn c_poly(i: u32) -> NcPoly {
    assert!(i >= 1, "C_i defined for i >= 1");
    let mut p = NcPoly::letter(Alphabet::Ab, B);
    let a = NcPoly::letter(Alphabet::Ab, A);
    for _ in 1..i {
        p = a.lie_bracket(&p);
    }
    p
}

/// The C-monomial `C_{i_1} C_{i_2} ... C_{i_r}` expanded as words.
pub fn c_monomial(indices: &[u32]) -> NcPoly {
    let mut p = NcPoly::one(Alphabet::Ab);
    for &i in indices {
        p = p.nc_mul(&c_poly(i));
    }
    p
}

/// A noncommutative polynomial that has passed the Lie membership test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LieElement(NcPoly);

impl LieElement {
    pub fn new(p: NcPoly) -> Result<Self> {
        if p.is_lie() {
            Ok(LieElement(p))
        } else {
            Err(Error::NotLie)
        }
    }

    /// Wraps a polynomial known to be Lie by construction.
    pub(crate) fn trusted(p: NcPoly) -> Self {
        debug_assert!(p.is_lie(), "trusted LieElement is not Lie");
        LieElement(p)
    }

    pub fn poly(&self) -> &NcPoly {
        &self.0
    }

    pub fn into_poly(self) -> NcPoly {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> NcPoly {
        NcPoly::word(Alphabet::Ab, s).unwrap()
    }

    fn a() -> NcPoly {
        NcPoly::letter(Alphabet::Ab, A)
    }

    fn b() -> NcPoly {
        NcPoly::letter(Alphabet::Ab, B)
    }

    #[test]
    fn word_order_is_graded_lex() {
        let mut words = vec![
            Word(vec![B]),
            Word(vec![A, A]),
            Word(vec![A]),
            Word(vec![A, B]),
            Word(vec![B, A]),
        ];
        words.sort();
        assert_eq!(
            words,
            vec![
                Word(vec![A]),
                Word(vec![B]),
                Word(vec![A, A]),
                Word(vec![A, B]),
                Word(vec![B, A]),
            ]
        );
    }

    #[test]
    fn nc_mul_examples() {
        assert_eq!(a().nc_mul(&b()), ab("ab"));
        // (ab - ba) * a = aba - baa
        let p = ab("ab").sub(&ab("ba"));
        assert_eq!(p.nc_mul(&a()), ab("aba").sub(&ab("baa")));
        // P * 1 = P
        assert_eq!(p.nc_mul(&NcPoly::one(Alphabet::Ab)), p);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(a().lie_bracket(&b()), ab("ab").sub(&ab("ba")));
        // [a,[a,b]] = aab - 2 aba + baa, expanded by hand
        let inner = a().lie_bracket(&b());
        let expected = ab("aab")
            .sub(&ab("aba").scale(&Rat::from_int(2)))
            .add(&ab("baa"));
        assert_eq!(a().lie_bracket(&inner), expected);
        // [P,P] = 0
        let p = ab("ab").add(&ab("bba").scale(&Rat::new(3, 2)));
        assert!(p.lie_bracket(&p).is_zero());
    }

    #[test]
    fn is_lie_examples() {
        assert!(a().lie_bracket(&b()).is_lie());
        assert!(!ab("ab").is_lie());
        let aab = ab("aab")
            .sub(&ab("aba").scale(&Rat::from_int(2)))
            .add(&ab("baa"));
        assert!(aab.is_lie());
        assert!(NcPoly::zero(Alphabet::Ab).is_lie());
        // mixed-degree Lie combination
        let mixed = a().lie_bracket(&b()).add(&aab);
        assert!(mixed.is_lie());
        assert!(!NcPoly::one(Alphabet::Ab).is_lie());
    }

    #[test]
    fn push_examples() {
        assert_eq!(ab("aab").push(), ab("baa"));
        assert_eq!(b().push(), b());
        assert_eq!(ab("aab").push().push(), ab("aab"));
        // pure a-powers are fixed
        assert_eq!(ab("aaa").push(), ab("aaa"));
        // [a,b] is anti-invariant
        let c2 = a().lie_bracket(&b());
        assert_eq!(c2.push(), c2.neg());
        assert!(!c2.is_push_invariant());
        assert!(NcPoly::zero(Alphabet::Ab).is_push_invariant());
    }

    #[test]
    fn push_order_divides_r_plus_one() {
        // spot check depth 2 and 3 words
        for s in ["aabab", "ababa", "babba", "aabbba"] {
            let w = ab(s);
            let r = NcPoly::word_depth(&Alphabet::Ab.parse_word(s).unwrap());
            let mut p = w.clone();
            for _ in 0..=r {
                p = p.push();
            }
            assert_eq!(p, w, "push^(r+1) fixes {s}");
        }
    }

    #[test]
    fn c_polys() {
        assert_eq!(c_poly(1), b());
        assert_eq!(c_poly(2), ab("ab").sub(&ab("ba")));
        let c3 = ab("aab")
            .sub(&ab("aba").scale(&Rat::from_int(2)))
            .add(&ab("baa"));
        assert_eq!(c_poly(3), c3);
        assert!(c_poly(7).is_push_invariant());
    }

    #[test]
    fn star_projection_examples() {
        // [a,b] -> b_2 - (1/2) b_1^2
        let p = a().lie_bracket(&b());
        let s = p.star();
        let alph = Alphabet::BSeries { max: 2 };
        let mut expected = NcPoly::zero(alph);
        expected.add_term(Word(vec![1]), Rat::one()); // b2
        expected.add_term(Word(vec![0, 0]), Rat::new(-1, 2)); // b1^2
        assert_eq!(s, expected);

        // bab -> b_1 b_2
        let s = ab("bab").star_projection(2).unwrap();
        let alph = Alphabet::BSeries { max: 3 };
        let mut expected = NcPoly::zero(alph);
        expected.add_term(Word(vec![0, 1]), Rat::one());
        assert_eq!(s, expected);

        // depth-3 homogeneous input: pure rewrite, no correction possible
        let p = ab("babab").add(&ab("aabbb").scale(&Rat::from_int(5)));
        let s = p.star_projection(3).unwrap();
        let alph = Alphabet::BSeries { max: 5 };
        let mut expected = NcPoly::zero(alph);
        expected.add_term(Word(vec![0, 1, 1]), Rat::one()); // b1 b2 b2 from babab
        expected.add_term(Word(vec![2, 0, 0]), Rat::from_int(5)); // b3 b1 b1 from aabbb
        assert_eq!(s, expected);

        assert!(ab("ab").add(&ab("bab")).star_projection(1).is_err());
    }

    #[test]
    fn rewrite_in_c_examples() {
        let c = c_poly(2).rewrite_in_c(1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&vec![2u32]], Rat::one());

        // C_1 C_2 = b(ab - ba) = bab - bba
        let p = ab("bab").sub(&ab("bba"));
        let c = p.rewrite_in_c(2).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&vec![1u32, 2u32]], Rat::one());

        assert_eq!(a().rewrite_in_c(0), Err(Error::NotInCSpan));
    }

    #[test]
    fn rewrite_in_c_round_trips() {
        // a Lie element of weight 5, depth 2
        let p = c_poly(2).lie_bracket(&c_poly(3));
        let coords = p.rewrite_in_c(2).unwrap();
        let mut back = NcPoly::zero(Alphabet::Ab);
        for (idx, c) in &coords {
            back = back.add(&c_monomial(idx).scale(c));
        }
        assert_eq!(back, p);

        // non-Lie but in the C-span: a plain product
        let q = c_poly(2).nc_mul(&c_poly(2));
        let coords = q.rewrite_in_c(2).unwrap();
        assert_eq!(coords[&vec![2u32, 2u32]], Rat::one());
    }

    #[test]
    fn jacobi_small() {
        let p = c_poly(2);
        let q = c_poly(3);
        let r = ab("abb").sub(&ab("bab").scale(&Rat::from_int(2))).add(&ab("bba"));
        let j = p
            .lie_bracket(&q)
            .lie_bracket(&r)
            .add(&q.lie_bracket(&r).lie_bracket(&p))
            .add(&r.lie_bracket(&p).lie_bracket(&q));
        assert!(j.is_zero());
    }

    #[test]
    fn jacobi_on_random_homogeneous_to_weight_8() {
        use crate::lyndon::lyndon_lie_basis;
        // deterministic "random" coefficients
        let mut state = 0x12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        let mut sample = |w: usize, d: usize| {
            let mut p = NcPoly::zero(Alphabet::Ab);
            for el in lyndon_lie_basis(w, Some(d)) {
                p = p.add(&el.poly().scale(&Rat::from_int(next())));
            }
            p
        };
        for (w1, w2, w3) in [(2usize, 3usize, 3usize), (3, 2, 2), (2, 2, 4)] {
            let p = sample(w1, 1);
            let q = sample(w2, w2.min(2));
            let r = sample(w3, 1);
            assert!(w1 + w2 + w3 <= 8);
            let j = p
                .lie_bracket(&q)
                .lie_bracket(&r)
                .add(&q.lie_bracket(&r).lie_bracket(&p))
                .add(&r.lie_bracket(&p).lie_bracket(&q));
            assert!(j.is_zero());
            // brackets of Lie elements stay Lie
            assert!(p.lie_bracket(&q).is_lie());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = ab("aab").sub(&ab("aba").scale(&Rat::new(2, 3)));
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"alphabet\":[\"a\",\"b\"]"));
        assert!(s.contains("\"word\":\"aab\""));
        let back: NcPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);

        let alph = Alphabet::BSeries { max: 3 };
        let q = NcPoly::word(alph, "b1b3b2").unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert!(s.contains("b1b3b2"));
        let back: NcPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn bseries_truncation_rejected() {
        let alph = Alphabet::BSeries { max: 2 };
        assert!(alph.parse_word("b3").is_err());
        assert!(alph.parse_word("b1b2").is_ok());
    }
}
