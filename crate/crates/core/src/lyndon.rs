//! Lyndon words over `{a, b}` and the standard-bracketing Lyndon basis of the
//! free Lie algebra, used to solve linear problems inside `Lie[a,b]`.

use crate::ncalg::{Alphabet, LieElement, NcPoly};

/// All Lyndon words of length `len` over `{a=0, b=1}` in lexicographic order,
/// optionally restricted to words with exactly `depth` letters `b`.
pub fn lyndon_words(len: usize, depth: Option<usize>) -> Vec<Vec<u8>> {
    if len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Duval's generation of Lyndon words of length <= len, in lex order.
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == len {
            let d = w.iter().filter(|&&l| l == 1).count();
            if depth.is_none_or(|dd| dd == d) {
                out.push(w.clone());
            }
        }
        let m = w.len();
        let mut t = Vec::with_capacity(len);
        while t.len() < len {
            t.push(w[t.len() % m]);
        }
        w = t;
        while w.last() == Some(&1) {
            w.pop();
        }
        if w.is_empty() {
            break;
        }
        *w.last_mut().unwrap() += 1;
    }
    out
}

/// Standard bracketing of a Lyndon word: the right factor is the
/// lexicographically least proper suffix (equivalently, the longest proper
/// Lyndon suffix).
pub fn standard_bracketing(word: &[u8]) -> NcPoly {
    assert!(!word.is_empty());
    if word.len() == 1 {
        return NcPoly::letter(Alphabet::Ab, word[0]);
    }
    let split = (1..word.len())
        .min_by(|&i, &j| word[i..].cmp(&word[j..]))
        .unwrap();
    standard_bracketing(&word[..split]).lie_bracket(&standard_bracketing(&word[split..]))
}

/// The Lyndon basis of the weight-`weight` (optionally depth-`depth`)
/// component of `Lie[a,b]`, in lexicographic Lyndon-word order.
pub fn lyndon_lie_basis(weight: usize, depth: Option<usize>) -> Vec<LieElement> {
    lyndon_words(weight, depth)
        .iter()
        .map(|w| LieElement::trusted(standard_bracketing(w)))
        .collect()
}

pub fn moebius(n: u64) -> i64 {
    let mut m = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if m > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Witt dimension of the weight-`n` component of the free Lie algebra on two
/// generators: `(1/n) sum_{d|n} mu(d) 2^{n/d}`.
pub fn witt_dimension(n: usize) -> usize {
    let n = n as u64;
    let mut total: i64 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += moebius(d) * 2i64.pow((n / d) as u32);
        }
    }
    (total / n as i64) as usize
}

/// Number of Lyndon words of length `n` with exactly `k` letters `b`:
/// `(1/n) sum_{d | gcd(n,k)} mu(d) C(n/d, k/d)`.
pub fn lyndon_count(n: usize, k: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    fn binom(n: usize, k: usize) -> i64 {
        if k > n {
            return 0;
        }
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) as i64 / (i + 1) as i64;
        }
        r
    }
    if n == 0 {
        return 0;
    }
    let g = gcd(n, k); // gcd(n, 0) = n
    let mut total: i64 = 0;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            total += moebius(d as u64) * binom(n / d, k / d);
        }
    }
    (total / n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;
    use crate::ncalg::{Alphabet, NcPoly, Word};
    use crate::rat::Rat;

    #[test]
    fn weight_two_and_three_bases() {
        let basis = lyndon_lie_basis(2, None);
        assert_eq!(basis.len(), 1);
        let ab = NcPoly::letter(Alphabet::Ab, 0).lie_bracket(&NcPoly::letter(Alphabet::Ab, 1));
        assert_eq!(basis[0].poly(), &ab);

        let basis = lyndon_lie_basis(3, None);
        assert_eq!(basis.len(), 2); // {[a,[a,b]], [[a,b],b]}
        let a = NcPoly::letter(Alphabet::Ab, 0);
        let b = NcPoly::letter(Alphabet::Ab, 1);
        assert_eq!(basis[0].poly(), &a.lie_bracket(&a.lie_bracket(&b)));
        assert_eq!(basis[1].poly(), &a.lie_bracket(&b).lie_bracket(&b));
    }

    #[test]
    fn witt_numbers() {
        // classical values for two generators
        let expected = [2usize, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(witt_dimension(i + 1), e, "weight {}", i + 1);
        }
        for n in 1..=10 {
            assert_eq!(lyndon_words(n, None).len(), witt_dimension(n));
        }
    }

    #[test]
    fn depth_counts_sum_to_witt() {
        for n in 2..=9 {
            let total: usize = (0..=n).map(|k| lyndon_words(n, Some(k)).len()).sum();
            assert_eq!(total, witt_dimension(n));
            for k in 0..=n {
                assert_eq!(lyndon_words(n, Some(k)).len(), lyndon_count(n, k));
            }
        }
    }

    #[test]
    fn basis_spans_with_full_rank() {
        // Expanded Lyndon elements at each weight are linearly independent
        // and span a space of dimension equal to the Witt number.
        for n in 2..=7 {
            let basis = lyndon_lie_basis(n, None);
            // index all words appearing
            let mut words: Vec<Word> = Vec::new();
            for e in &basis {
                for (w, _) in e.poly().terms() {
                    if !words.contains(w) {
                        words.push(w.clone());
                    }
                }
            }
            words.sort();
            let cols: Vec<Vec<Rat>> = basis
                .iter()
                .map(|e| {
                    words
                        .iter()
                        .map(|w| e.poly().coeff(&w.0))
                        .collect::<Vec<_>>()
                })
                .collect();
            let m = RatMatrix::from_cols(cols);
            assert_eq!(m.rank(), witt_dimension(n), "weight {n}");
        }
    }

    #[test]
    fn bracketings_are_lie() {
        for n in 1..=8 {
            for w in lyndon_words(n, None) {
                assert!(standard_bracketing(&w).is_lie());
            }
        }
    }
}
