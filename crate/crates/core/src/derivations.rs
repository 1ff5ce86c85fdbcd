//! The derivation algebra of `Lie[a,b]`: the elliptic generators `eps_{2i}`
//! and `phi0`, derivation brackets, the highest-weight elements `h^d_{p,q}`,
//! the depth-3 filtration membership test, and the Poisson bracket.
//!
//! A derivation is stored by its values on the two generators; by freeness
//! this determines it, and equality of derivations is equality of both
//! images.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::One;
use serde::{Deserialize, Serialize};

use crate::linalg::RatMatrix;
use crate::lyndon::lyndon_lie_basis;
use crate::ncalg::{c_poly, Alphabet, LieElement, NcPoly, Word, A, B};
use crate::rat::Rat;
use crate::{Error, Result};

/// A derivation of the free Lie algebra on `a, b`, stored as its values on
/// the two generators. Weight `n` means both images are homogeneous of
/// degree `n + 1`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "DerivationRepr", into = "DerivationRepr")]
pub struct Derivation {
    val_a: NcPoly,
    val_b: NcPoly,
    weight: i64,
    /// Marks `phi0` and anything built from it: such derivations need not
    /// kill `[a,b]`, and `Der^0`-only operations reject them.
    sl2: bool,
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.val_a == other.val_a && self.val_b == other.val_b
    }
}

impl Eq for Derivation {}

impl Derivation {
    pub fn zero() -> Self {
        Derivation {
            val_a: NcPoly::zero(Alphabet::Ab),
            val_b: NcPoly::zero(Alphabet::Ab),
            weight: 0,
            sl2: false,
        }
    }

    /// Builds a derivation from its images; both must be homogeneous of the
    /// same degree (or zero), which fixes the weight.
    pub fn from_images(val_a: NcPoly, val_b: NcPoly) -> Result<Self> {
        let da = val_a.homogeneous_degree();
        let db = val_b.homogeneous_degree();
        let (Some(da), Some(db)) = (da, db) else {
            return Err(Error::NotHomogeneous(
                "derivation images must be homogeneous".into(),
            ));
        };
        let deg = match (val_a.is_zero(), val_b.is_zero()) {
            (true, true) => 1,
            (false, true) => da,
            (true, false) => db,
            (false, false) => {
                if da != db {
                    return Err(Error::NotHomogeneous(format!(
                        "images of degrees {da} and {db}"
                    )));
                }
                da
            }
        };
        Ok(Derivation {
            val_a,
            val_b,
            weight: deg as i64 - 1,
            sl2: false,
        })
    }

    pub fn val_a(&self) -> &NcPoly {
        &self.val_a
    }

    pub fn val_b(&self) -> &NcPoly {
        &self.val_b
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_sl2(&self) -> bool {
        self.sl2
    }

    pub fn is_zero(&self) -> bool {
        self.val_a.is_zero() && self.val_b.is_zero()
    }

    /// Leibniz extension to the enveloping algebra: in each word, each letter
    /// is replaced in turn by its image.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        assert_eq!(*p.alphabet(), Alphabet::Ab);
        let mut out = NcPoly::zero(Alphabet::Ab);
        for (w, c) in p.terms() {
            for (j, &letter) in w.0.iter().enumerate() {
                let image = if letter == A { &self.val_a } else { &self.val_b };
                for (iw, ic) in image.terms() {
                    let mut word = Vec::with_capacity(w.0.len() + iw.0.len());
                    word.extend_from_slice(&w.0[..j]);
                    word.extend_from_slice(&iw.0);
                    word.extend_from_slice(&w.0[j + 1..]);
                    out.add_term(Word(word), c * ic);
                }
            }
        }
        out
    }

    /// Commutator of derivations, computed on the generators.
    pub fn bracket(&self, other: &Self) -> Self {
        Derivation {
            val_a: self.apply(&other.val_a).sub(&other.apply(&self.val_a)),
            val_b: self.apply(&other.val_b).sub(&other.apply(&self.val_b)),
            weight: self.weight + other.weight,
            sl2: self.sl2 || other.sl2,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.weight, other.weight, "weight mismatch in sum");
        Derivation {
            val_a: self.val_a.add(&other.val_a),
            val_b: self.val_b.add(&other.val_b),
            weight: self.weight,
            sl2: self.sl2 || other.sl2,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Derivation {
            val_a: self.val_a.scale(s),
            val_b: self.val_b.scale(s),
            weight: self.weight,
            sl2: self.sl2,
        }
    }

    /// `[a, b]` as a polynomial; the elliptic generators all kill it.
    pub fn ab_bracket() -> NcPoly {
        NcPoly::letter(Alphabet::Ab, A).lie_bracket(&NcPoly::letter(Alphabet::Ab, B))
    }

    pub fn kills_ab(&self) -> bool {
        self.apply(&Self::ab_bracket()).is_zero()
    }

    /// Highest weight means commuting with `phi0`.
    pub fn is_highest_weight(&self) -> bool {
        make_phi0().bracket(self).is_zero()
    }
}

impl std::fmt::Debug for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D(a) = {}, D(b) = {}", self.val_a, self.val_b)
    }
}

#[derive(Serialize, Deserialize)]
struct DerivationRepr {
    val_a: NcPoly,
    val_b: NcPoly,
    weight: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    sl2: bool,
}

impl From<Derivation> for DerivationRepr {
    fn from(d: Derivation) -> Self {
        DerivationRepr {
            val_a: d.val_a,
            val_b: d.val_b,
            weight: d.weight,
            sl2: d.sl2,
        }
    }
}

impl TryFrom<DerivationRepr> for Derivation {
    type Error = Error;
    fn try_from(r: DerivationRepr) -> Result<Self> {
        let mut d = Derivation::from_images(r.val_a, r.val_b)?;
        d.sl2 = r.sl2;
        Ok(d)
    }
}

/// `eps_{2i}(a) = a^{2i}.b` and
/// `eps_{2i}(b) = sum_{j=0}^{i-1} (-1)^j [a^j.b, a^{2i-1-j}.b]`;
/// for `i = 0` the `b`-image is the empty sum.
pub fn make_eps(two_i: u64) -> Result<Derivation> {
    if !two_i.is_multiple_of(2) {
        return Err(Error::Domain(format!("eps index {two_i} must be even")));
    }
    let i = two_i / 2;
    let val_a = c_poly(two_i as u32 + 1);
    let mut val_b = NcPoly::zero(Alphabet::Ab);
    for j in 0..i {
        let term = c_poly(j as u32 + 1).lie_bracket(&c_poly((2 * i - j) as u32));
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        val_b = val_b.add(&term.scale(&sign));
    }
    Ok(Derivation {
        val_a,
        val_b,
        weight: two_i as i64,
        sl2: false,
    })
}

/// `phi0(a) = 0`, `phi0(b) = a`. Does not kill `[a,b]` as a member of the
/// elliptic family would; it carries the `sl2` flag so `Der^0`-only
/// operations can reject it.
pub fn make_phi0() -> Derivation {
    Derivation {
        val_a: NcPoly::zero(Alphabet::Ab),
        val_b: NcPoly::letter(Alphabet::Ab, A),
        weight: 0,
        sl2: true,
    }
}

/// One of the highest-weight elements `h^d_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HElement {
    pub p: u64,
    pub q: u64,
    pub d: u32,
    pub derivation: Derivation,
}

fn binom_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial_big(n: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 2..=n {
        r *= BigInt::from(i);
    }
    r
}

/// `h^d_{p,q} = sum_{i+j=d-2} (-1)^i ((d-2)!/(C(p,i) C(q,j)))
/// [ad(eps_0)^i(eps_{p+2}), ad(eps_0)^j(eps_{q+2})]`.
///
/// `eps_0^i . X` is `ad(eps_0)^i(X)` in the derivation algebra.
pub fn make_h(p: u64, q: u64, d: u32) -> Result<HElement> {
    if p < 2 || q < 2 || !p.is_multiple_of(2) || !q.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "need p, q even and >= 2, got ({p},{q})"
        )));
    }
    if d < 2 {
        return Err(Error::Domain(format!("need depth d >= 2, got {d}")));
    }
    let eps0 = make_eps(0)?;
    let eps_p = make_eps(p + 2)?;
    let eps_q = make_eps(q + 2)?;
    let fact = factorial_big(d as u64 - 2);
    let mut total = Derivation::zero();
    for i in 0..=(d as u64 - 2) {
        let j = d as u64 - 2 - i;
        let mut left = eps_p.clone();
        for _ in 0..i {
            left = eps0.bracket(&left);
        }
        let mut right = eps_q.clone();
        for _ in 0..j {
            right = eps0.bracket(&right);
        }
        let denom = binom_big(p, i) * binom_big(q, j);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let coeff = Rat::from_bigint(fact.clone() * BigInt::from(sign)) / Rat::from_bigint(denom);
        total = total.add(&left.bracket(&right).scale(&coeff));
    }
    Ok(HElement {
        p,
        q,
        d,
        derivation: total,
    })
}

/// The derivation `D_P` with `D_P(a) = 0`, `D_P(b) = [b, P]`.
pub fn d_of(p: &NcPoly) -> Derivation {
    let b = NcPoly::letter(Alphabet::Ab, B);
    Derivation {
        val_a: NcPoly::zero(Alphabet::Ab),
        val_b: b.lie_bracket(p),
        weight: p.max_degree() as i64,
        sl2: false,
    }
}

/// Poisson bracket `{P,Q} = [P,Q] + D_P(Q) - D_Q(P)`.
pub fn poisson(p: &LieElement, q: &LieElement) -> LieElement {
    let bracket = p.poly().lie_bracket(q.poly());
    let dp_q = d_of(p.poly()).apply(q.poly());
    let dq_p = d_of(q.poly()).apply(p.poly());
    LieElement::trusted(bracket.add(&dp_q).sub(&dq_p))
}

/// All `{a,b}` words of length `n` with exactly `d` letters `b`, in
/// lexicographic order, as a coordinate frame for exact linear algebra.
pub fn words_of(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, d: usize, acc: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if acc.len() == n {
            if d == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let remaining = n - acc.len();
        if d < remaining {
            acc.push(A);
            rec(n, d, acc, out);
            acc.pop();
        }
        if d > 0 {
            acc.push(B);
            rec(n, d - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Coefficient vector of `p` against an ordered word frame. Panics if `p`
/// has a word outside the frame.
pub fn coords_in(p: &NcPoly, frame: &[Vec<u8>]) -> Vec<Rat> {
    let index: BTreeMap<&[u8], usize> = frame
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut v = vec![Rat::zero(); frame.len()];
    for (w, c) in p.terms() {
        let i = *index
            .get(w.0.as_slice())
            .expect("word outside coordinate frame");
        v[i] = c.clone();
    }
    v
}

/// For a push-invariant homogeneous `P` of degree >= 2, the unique `Q` with
/// `[P, b] + [a, Q] = 0`, found by exact linear solve in Lyndon coordinates,
/// depth slice by depth slice.
pub fn recover_partner(p: &LieElement) -> Result<LieElement> {
    let poly = p.poly();
    if !poly.is_push_invariant() {
        return Err(Error::NotPushInvariant);
    }
    if poly.is_zero() {
        return Ok(LieElement::trusted(NcPoly::zero(Alphabet::Ab)));
    }
    let Some(n) = poly.homogeneous_degree() else {
        return Err(Error::NotHomogeneous("recover_partner input".into()));
    };
    if n < 2 {
        return Err(Error::Domain(
            "recover_partner needs homogeneous degree >= 2".into(),
        ));
    }
    let a = NcPoly::letter(Alphabet::Ab, A);
    let b = NcPoly::letter(Alphabet::Ab, B);
    let mut q_total = NcPoly::zero(Alphabet::Ab);
    for (d, slice) in poly.depth_components() {
        // [P_d, b] + [a, Q_{d+1}] = 0, solved in the weight-n depth-(d+1)
        // Lyndon basis.
        let frame = words_of(n + 1, d + 1);
        let target = coords_in(&slice.lie_bracket(&b).neg(), &frame);
        let basis = lyndon_lie_basis(n, Some(d + 1));
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|e| coords_in(&a.lie_bracket(e.poly()), &frame))
            .collect();
        let m = RatMatrix::from_cols(cols);
        let x = m.solve(&target).ok_or(Error::NoSolution)?;
        for (c, e) in x.iter().zip(&basis) {
            q_total = q_total.add(&e.poly().scale(c));
        }
    }
    Ok(LieElement::trusted(q_total))
}

/// Factors `P = [a, Q]` when no expanded monomial of `P` starts and ends
/// with `b`; returns `NoFactor` exactly when one does.
pub fn factor_ad_a(p: &LieElement) -> Result<LieElement> {
    let poly = p.poly();
    for (w, _) in poly.terms() {
        if w.0.first() == Some(&B) && w.0.last() == Some(&B) {
            return Err(Error::NoFactor);
        }
    }
    if poly.is_zero() {
        return Ok(LieElement::trusted(NcPoly::zero(Alphabet::Ab)));
    }
    let Some(n) = poly.homogeneous_degree() else {
        return Err(Error::NotHomogeneous("factor_ad_a input".into()));
    };
    if n < 2 {
        return Err(Error::Domain("factor_ad_a needs degree >= 2".into()));
    }
    let a = NcPoly::letter(Alphabet::Ab, A);
    let mut q_total = NcPoly::zero(Alphabet::Ab);
    for (d, slice) in poly.depth_components() {
        let frame = words_of(n, d);
        let target = coords_in(&slice, &frame);
        let basis = lyndon_lie_basis(n - 1, Some(d));
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|e| coords_in(&a.lie_bracket(e.poly()), &frame))
            .collect();
        let m = RatMatrix::from_cols(cols);
        let x = m.solve(&target).ok_or(Error::NoSolution)?;
        for (c, e) in x.iter().zip(&basis) {
            q_total = q_total.add(&e.poly().scale(c));
        }
    }
    Ok(LieElement::trusted(q_total))
}

/// A certificate expressing a depth-3 polynomial over the spanning set
/// `[a^i.b, [a^j.b, a^k.b]]` with `i, j, k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theta3Witness {
    /// `(i, j, k)` labels with nonzero coefficients.
    pub terms: Vec<([u32; 3], Rat)>,
}

impl Theta3Witness {
    /// Re-expands the witness combination.
    pub fn expand(&self) -> NcPoly {
        let mut out = NcPoly::zero(Alphabet::Ab);
        for ([i, j, k], c) in &self.terms {
            let t = c_poly(i + 1).lie_bracket(&c_poly(j + 1).lie_bracket(&c_poly(k + 1)));
            out = out.add(&t.scale(c));
        }
        out
    }
}

/// Ordered `(i, j, k)` with `i, j, k >= 1` and `i + j + k = w - 3`.
pub fn theta3_triples(w: usize) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    if w < 6 {
        return out;
    }
    let total = (w - 3) as u32;
    for i in 1..total {
        for j in 1..total {
            if i + j >= total {
                continue;
            }
            out.push([i, j, total - i - j]);
        }
    }
    out
}

/// Decides whether a depth-3 homogeneous polynomial lies in the span of
/// `[a^i.b, [a^j.b, a^k.b]]` with `i, j, k >= 1` (the depth-3 layer of the
/// `Theta` filtration), and returns coefficients if so.
pub fn theta3_membership(p: &NcPoly) -> Result<Theta3Witness> {
    if p.is_zero() {
        return Ok(Theta3Witness { terms: vec![] });
    }
    let Some(w) = p.homogeneous_degree() else {
        return Err(Error::NotHomogeneous("theta3 input".into()));
    };
    if p.homogeneous_depth() != Some(3) {
        return Err(Error::NotHomogeneous(
            "theta3 input must have depth 3".into(),
        ));
    }
    let triples = theta3_triples(w);
    let frame = words_of(w, 3);
    let cols: Vec<Vec<Rat>> = triples
        .iter()
        .map(|&[i, j, k]| {
            let t = c_poly(i + 1).lie_bracket(&c_poly(j + 1).lie_bracket(&c_poly(k + 1)));
            coords_in(&t, &frame)
        })
        .collect();
    let m = RatMatrix::from_cols(cols);
    let target = coords_in(p, &frame);
    let x = m.solve(&target).ok_or(Error::NotMember)?;
    let terms = triples
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Theta3Witness { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::c_monomial;

    fn ab(s: &str) -> NcPoly {
        NcPoly::word(Alphabet::Ab, s).unwrap()
    }

    #[test]
    fn eps_images() {
        let e0 = make_eps(0).unwrap();
        assert_eq!(e0.val_a(), &NcPoly::letter(Alphabet::Ab, B));
        assert!(e0.val_b().is_zero());
        assert_eq!(e0.weight(), 0);

        let e2 = make_eps(2).unwrap();
        let c3 = ab("aab")
            .sub(&ab("aba").scale(&Rat::from_int(2)))
            .add(&ab("baa"));
        assert_eq!(e2.val_a(), &c3);
        // eps_2(b) = [b, [a,b]]
        let b = NcPoly::letter(Alphabet::Ab, B);
        assert_eq!(e2.val_b(), &b.lie_bracket(&Derivation::ab_bracket()));

        let e4 = make_eps(4).unwrap();
        assert_eq!(e4.val_a(), &c_poly(5));
        assert_eq!(e4.weight(), 4);

        assert!(make_eps(3).is_err());
    }

    #[test]
    fn eps_kills_ab() {
        for i in 0..=8 {
            let e = make_eps(2 * i).unwrap();
            assert!(e.kills_ab(), "eps_{} on [a,b]", 2 * i);
        }
    }

    #[test]
    fn leibniz_rule() {
        let d = make_eps(4).unwrap();
        let p = ab("ab").add(&ab("bba").scale(&Rat::from_int(3)));
        let q = ab("ba").sub(&ab("aab"));
        let lhs = d.apply(&p.nc_mul(&q));
        let rhs = d.apply(&p).nc_mul(&q).add(&p.nc_mul(&d.apply(&q)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi0_images() {
        let phi = make_phi0();
        assert!(phi.val_a().is_zero());
        assert_eq!(phi.val_b(), &NcPoly::letter(Alphabet::Ab, A));
        assert!(phi.bracket(&phi).is_zero());
        assert!(phi.is_sl2());
        // phi0 happens to kill [a,b] too: [a, phi0(b)] = [a,a] = 0
        assert!(phi.kills_ab());
    }

    #[test]
    fn eps2_commutes_with_small_generators() {
        let e2 = make_eps(2).unwrap();
        for idx in [0u64, 4, 6, 8] {
            let e = make_eps(idx).unwrap();
            assert!(e2.bracket(&e).is_zero(), "[eps_2, eps_{idx}]");
        }
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let x = make_eps(0).unwrap();
        let y = make_eps(4).unwrap();
        let z = make_eps(6).unwrap();
        assert_eq!(x.bracket(&y), y.bracket(&x).scale(&-Rat::one()));
        let j = x
            .bracket(&y)
            .bracket(&z)
            .add(&y.bracket(&z).bracket(&x))
            .add(&z.bracket(&x).bracket(&y));
        assert!(j.is_zero());
    }

    #[test]
    fn h_examples() {
        // d = 2 collapses the sum to [eps_{p+2}, eps_{q+2}]
        let h = make_h(2, 8, 2).unwrap();
        let expected = make_eps(4).unwrap().bracket(&make_eps(10).unwrap());
        assert_eq!(h.derivation, expected);

        // h^3_{2,10} = (1/10)[eps_4, [eps_0, eps_12]] - (1/2)[[eps_0, eps_4], eps_12]
        let h = make_h(2, 10, 3).unwrap();
        let e0 = make_eps(0).unwrap();
        let e4 = make_eps(4).unwrap();
        let e12 = make_eps(12).unwrap();
        let expected = e4
            .bracket(&e0.bracket(&e12))
            .scale(&Rat::new(1, 10))
            .add(&e0.bracket(&e4).bracket(&e12).scale(&Rat::new(-1, 2)));
        assert_eq!(h.derivation, expected);

        // h^3_{6,6} = (1/3)[eps_8, [eps_0, eps_8]]
        let h = make_h(6, 6, 3).unwrap();
        let e8 = make_eps(8).unwrap();
        let expected = e8.bracket(&e0.bracket(&e8)).scale(&Rat::new(1, 3));
        assert_eq!(h.derivation, expected);

        assert!(make_h(1, 9, 2).is_err());
        assert!(make_h(2, 2, 1).is_err());
    }

    #[test]
    fn highest_weight_examples() {
        assert!(Derivation::zero().is_highest_weight());
        assert!(make_h(2, 8, 2).unwrap().derivation.is_highest_weight());
        // [phi0, eps_0] is the nonzero sl2 semisimple element
        assert!(!make_eps(0).unwrap().is_highest_weight());
    }

    #[test]
    fn recover_partner_matches_eps() {
        for i in 1..=4u64 {
            let e = make_eps(2 * i).unwrap();
            let p = LieElement::new(e.val_a().clone()).unwrap();
            let q = recover_partner(&p).unwrap();
            assert_eq!(q.poly(), e.val_b(), "partner of eps_{}(a)", 2 * i);
        }
        // [a,b] is not push-invariant
        let p = LieElement::new(Derivation::ab_bracket()).unwrap();
        assert_eq!(recover_partner(&p), Err(Error::NotPushInvariant));
    }

    #[test]
    fn factor_ad_a_examples() {
        let c3 = LieElement::new(c_poly(3)).unwrap();
        let q = factor_ad_a(&c3).unwrap();
        assert_eq!(q.poly(), &c_poly(2));

        let c2 = LieElement::new(c_poly(2)).unwrap();
        let q = factor_ad_a(&c2).unwrap();
        assert_eq!(q.poly(), &NcPoly::letter(Alphabet::Ab, B));

        // [[a,b],b] = abb - 2bab + bba contains bab: no factorization
        let p = Derivation::ab_bracket().lie_bracket(&NcPoly::letter(Alphabet::Ab, B));
        let p = LieElement::new(p).unwrap();
        assert_eq!(factor_ad_a(&p), Err(Error::NoFactor));
    }

    #[test]
    fn theta3_examples() {
        // a spanning element maps to itself
        let t = c_poly(2).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3)));
        let w = theta3_membership(&t).unwrap();
        assert_eq!(w.expand(), t);
        assert_eq!(w.terms, vec![([1, 1, 2], Rat::one())]);

        // an i = 0 term falls outside the span
        let bad = c_poly(1).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3)));
        assert_eq!(theta3_membership(&bad), Err(Error::NotMember));
    }

    #[test]
    fn poisson_examples() {
        let p = LieElement::new(c_poly(3)).unwrap();
        assert!(poisson(&p, &p).poly().is_zero());
        let b = LieElement::new(NcPoly::letter(Alphabet::Ab, B)).unwrap();
        assert!(poisson(&b, &b).poly().is_zero());
    }

    #[test]
    fn poisson_transports_to_derivation_bracket() {
        // D_{ {P,Q} } = [D_P, D_Q] on a small sample
        let samples = [c_poly(2), c_poly(3), c_poly(1).lie_bracket(&c_poly(2))];
        for p in &samples {
            for q in &samples {
                let lp = LieElement::new(p.clone()).unwrap();
                let lq = LieElement::new(q.clone()).unwrap();
                let lhs = d_of(poisson(&lp, &lq).poly());
                let rhs = d_of(p).bracket(&d_of(q));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn words_frame_counts() {
        assert_eq!(words_of(3, 1).len(), 3);
        assert_eq!(words_of(17, 3).len(), 680);
        assert_eq!(words_of(2, 3).len(), 0);
    }

    #[test]
    fn c_monomial_degrees() {
        let m = c_monomial(&[2, 3, 1]);
        assert_eq!(m.homogeneous_depth(), Some(3));
        assert_eq!(m.homogeneous_degree(), Some(6));
    }
}
