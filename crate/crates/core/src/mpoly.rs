//! Sparse multivariate commutative polynomials over exact rationals,
//! linear-form denominators, and exact linear variable substitution.
//!
//! This is the representation layer for mould components. Every denominator
//! that arises from the flexion operations is a product of integer linear
//! forms, so a rational function is stored as a polynomial numerator together
//! with a multiset of canonical linear forms; no general multivariate gcd is
//! ever needed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;
use crate::{Error, Result};

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exps(pub Vec<u32>);

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial in `arity` variables.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MPolyRepr", into = "MPolyRepr")]
pub struct MPoly {
    arity: usize,
    terms: BTreeMap<Exps, Rat>,
}

impl MPoly {
    pub fn zero(arity: usize) -> Self {
        MPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Exps(vec![0; arity]), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rat::one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(Exps(e), Rat::one());
        p
    }

    pub fn monomial(arity: usize, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), arity, "exponent vector length");
        let mut p = Self::zero(arity);
        p.add_term(Exps(exps), c);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Exps(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.0.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the same total degree (zero counts as
    /// homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.0.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, exps: Exps, c: Rat) {
        assert_eq!(exps.0.len(), self.arity, "exponent vector length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
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
            return Self::zero(self.arity);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * s;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_arity(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.arity);
        }
        // sort-merge beats per-term map inserts on the sizes seen here
        let mut pairs: Vec<(Exps, Rat)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                pairs.push((Exps(exps), c1 * c2));
            }
        }
        Self::from_pairs(self.arity, pairs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.arity);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact composition with linear forms: variable `x_{j+1}` is replaced by
    /// the integer linear form `images[j]` in `new_arity` variables. Images
    /// may be zero.
    pub fn substitute_linear(&self, images: &[Vec<i64>], new_arity: usize) -> MPoly {
        assert_eq!(images.len(), self.arity, "one image per variable");
        for im in images {
            assert_eq!(im.len(), new_arity, "image arity");
        }
        let image_polys: Vec<MPoly> = images
            .iter()
            .map(|im| {
                let mut p = MPoly::zero(new_arity);
                for (t, &c) in im.iter().enumerate() {
                    if c != 0 {
                        let mut e = vec![0; new_arity];
                        e[t] = 1;
                        p.add_term(Exps(e), Rat::from_int(c));
                    }
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<MPoly>> = image_polys
            .iter()
            .map(|p| vec![MPoly::one(new_arity), p.clone()])
            .collect();
        let mut pairs: Vec<(Exps, Rat)> = Vec::new();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(new_arity, c.clone());
            for (j, &exp) in e.0.iter().enumerate() {
                while powers[j].len() <= exp as usize {
                    let next = powers[j].last().unwrap().mul(&image_polys[j]);
                    powers[j].push(next);
                }
                if exp > 0 {
                    term = term.mul(&powers[j][exp as usize]);
                }
            }
            pairs.extend(term.terms);
        }
        Self::from_pairs(new_arity, pairs)
    }

    /// Builds a polynomial from unsorted `(exponent, coefficient)` pairs by
    /// one sort-merge pass.
    fn from_pairs(arity: usize, mut pairs: Vec<(Exps, Rat)>) -> MPoly {
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms = BTreeMap::new();
        let mut it = pairs.into_iter();
        let Some((mut cur_e, mut cur_c)) = it.next() else {
            return MPoly::zero(arity);
        };
        for (e, c) in it {
            if e == cur_e {
                cur_c += c;
            } else {
                if !cur_c.is_zero() {
                    terms.insert(cur_e, cur_c);
                }
                cur_e = e;
                cur_c = c;
            }
        }
        if !cur_c.is_zero() {
            terms.insert(cur_e, cur_c);
        }
        MPoly { arity, terms }
    }

    /// Exact division by a linear form, or `None` when not divisible.
    /// Synthetic division along the first variable appearing in `f`.
    pub fn divide_exact(&self, f: &LinForm) -> Option<MPoly> {
        assert_eq!(f.0.len(), self.arity, "linear form arity");
        if self.is_zero() {
            return Some(MPoly::zero(self.arity));
        }
        let m = f.0.iter().position(|&c| c != 0).expect("nonzero form");
        let lead = Rat::from_int(f.0[m]);
        let f_poly = f.as_mpoly(self.arity);
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.arity);
        loop {
            let d = rem.terms.keys().map(|e| e.0[m]).max().unwrap_or(0);
            if d == 0 {
                break;
            }
            // top block in x_m, divided by lead * x_m
            let mut t = MPoly::zero(self.arity);
            for (e, c) in &rem.terms {
                if e.0[m] == d {
                    let mut exps = e.0.clone();
                    exps[m] -= 1;
                    t.add_term(Exps(exps), c / &lead);
                }
            }
            quot = quot.add(&t);
            rem = rem.sub(&f_poly.mul(&t));
            if rem.is_zero() {
                break;
            }
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (e, c) in &self.terms {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("{var}{}", i + 1)
                    } else {
                        format!("{var}{}^{}", i + 1, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        s
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    arity: usize,
    terms: Vec<MTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct MTermRepr {
    exps: Vec<u32>,
    coeff: Rat,
}

impl From<MPoly> for MPolyRepr {
    fn from(p: MPoly) -> Self {
        MPolyRepr {
            arity: p.arity,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| MTermRepr {
                    exps: e.0.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MPolyRepr> for MPoly {
    type Error = Error;
    fn try_from(r: MPolyRepr) -> Result<Self> {
        let mut p = MPoly::zero(r.arity);
        for t in r.terms {
            if t.exps.len() != r.arity {
                return Err(Error::ArityMismatch(t.exps.len(), r.arity));
            }
            p.add_term(Exps(t.exps), t.coeff);
        }
        Ok(p)
    }
}

/// A canonical homogeneous integer linear form: coprime coefficients, first
/// nonzero coefficient positive, not identically zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm(Vec<i64>);

impl LinForm {
    /// Canonicalizes an integer vector; returns the form and the integer
    /// scale with `coeffs = scale * canonical`. `None` for the zero vector.
    pub fn canonicalize(coeffs: &[i64]) -> Option<(LinForm, i64)> {
        let mut g: i64 = 0;
        for &c in coeffs {
            g = gcd_i64(g, c.abs());
        }
        if g == 0 {
            return None;
        }
        let first = coeffs.iter().find(|&&c| c != 0).copied().unwrap();
        let scale = if first < 0 { -g } else { g };
        let canon: Vec<i64> = coeffs.iter().map(|&c| c / scale).collect();
        Some((LinForm(canon), scale))
    }

    /// A single variable `x_{i+1}` as a form.
    pub fn unit_var(arity: usize, i: usize) -> LinForm {
        let mut v = vec![0; arity];
        v[i] = 1;
        LinForm(v)
    }

    /// The sum `x_1 + ... + x_arity`.
    pub fn all_ones(arity: usize) -> LinForm {
        LinForm(vec![1; arity])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_mpoly(&self, arity: usize) -> MPoly {
        assert_eq!(self.0.len(), arity);
        let mut p = MPoly::zero(arity);
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; arity];
                e[i] = 1;
                p.add_term(Exps(e), Rat::from_int(c));
            }
        }
        p
    }

    /// Composes the form with linear images (one per variable of `self`);
    /// the result is recanonicalized. `None` when the composition vanishes.
    pub fn substitute(&self, images: &[Vec<i64>], new_arity: usize) -> Option<(LinForm, i64)> {
        assert_eq!(images.len(), self.0.len());
        let mut out = vec![0i64; new_arity];
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (t, &ic) in images[k].iter().enumerate() {
                out[t] += c * ic;
            }
        }
        LinForm::canonicalize(&out)
    }

    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if c < 0 { "-" } else { "+" });
            }
            if mag != 1 {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&format!("{var}{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl serde::Serialize for LinForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for LinForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        match LinForm::canonicalize(&v) {
            Some((f, 1)) => Ok(f),
            _ => Err(serde::de::Error::custom(
                "linear form must be canonical: coprime coefficients, first nonzero positive",
            )),
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// A rational function: polynomial numerator over a multiset of canonical
/// linear-form denominator factors. Normalized so that no factor divides the
/// numerator exactly; scalars are absorbed into the numerator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RatComponentRepr", into = "RatComponentRepr")]
pub struct RatComponent {
    num: MPoly,
    den: BTreeMap<LinForm, u32>,
}

impl RatComponent {
    pub fn zero(arity: usize) -> Self {
        RatComponent {
            num: MPoly::zero(arity),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(num: MPoly) -> Self {
        RatComponent {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn new(num: MPoly, den: Vec<(LinForm, u32)>) -> Self {
        let mut d = BTreeMap::new();
        for (f, m) in den {
            if m > 0 {
                assert_eq!(f.arity(), num.arity(), "denominator arity");
                *d.entry(f).or_insert(0) += m;
            }
        }
        let mut c = RatComponent { num, den: d };
        c.normalize();
        c
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> impl Iterator<Item = (&LinForm, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    /// Cancels denominator factors dividing the numerator; the result is
    /// unique given canonical forms, since linear forms are primes in
    /// `Q[x_1..x_r]`.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<LinForm> = self.den.keys().cloned().collect();
        for f in factors {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match self.num.divide_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        RatComponent {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.arity());
        }
        RatComponent {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        // common denominator: per-factor max multiplicity
        let mut union: BTreeMap<LinForm, u32> = self.den.clone();
        for (f, &m) in &other.den {
            let e = union.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |c: &RatComponent| -> MPoly {
            let mut n = c.num.clone();
            for (f, &m) in &union {
                let have = c.den.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    n = n.mul(&f.as_mpoly(c.arity()));
                }
            }
            n
        };
        let num = lift(self).add(&lift(other));
        let mut out = RatComponent { num, den: union };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Sum of many components over a single common denominator, normalized
    /// once at the end. Equivalent to folding `add`, but much cheaper when
    /// the terms carry many distinct denominator factors.
    pub fn sum(arity: usize, terms: &[RatComponent]) -> Self {
        let mut union: BTreeMap<LinForm, u32> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.arity(), arity, "arity mismatch");
            for (f, &m) in &t.den {
                let e = union.entry(f.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut num = MPoly::zero(arity);
        for t in terms {
            let mut n = t.num.clone();
            for (f, &m) in &union {
                let have = t.den.get(f).copied().unwrap_or(0);
                if m > have {
                    n = n.mul(&f.as_mpoly(arity).pow(m - have));
                }
            }
            num = num.add(&n);
        }
        let mut out = RatComponent { num, den: union };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut out = RatComponent {
            num: self.num.mul(&other.num),
            den,
        };
        out.normalize();
        out
    }

    /// Multiplies by a single linear form, cancelling against the
    /// denominator first.
    pub fn mul_form(&self, f: &LinForm) -> Self {
        let mut out = self.clone();
        if let Some(m) = out.den.get_mut(f) {
            *m -= 1;
            if *m == 0 {
                out.den.remove(f);
            }
            return out;
        }
        out.num = out.num.mul(&f.as_mpoly(self.arity()));
        out
    }

    /// Divides by a single linear form (recorded as a denominator factor,
    /// then normalized).
    pub fn div_form(&self, f: &LinForm) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        *den.entry(f.clone()).or_insert(0) += 1;
        let mut out = RatComponent {
            num: self.num.clone(),
            den,
        };
        out.normalize();
        out
    }

    /// Linear change of variables. Fails if a denominator factor vanishes
    /// under the substitution (cannot happen for invertible changes).
    pub fn substitute_linear(&self, images: &[Vec<i64>], new_arity: usize) -> Result<Self> {
        let mut num = self.num.substitute_linear(images, new_arity);
        let mut den: BTreeMap<LinForm, u32> = BTreeMap::new();
        for (f, &m) in &self.den {
            let (canon, scale) = f.substitute(images, new_arity).ok_or_else(|| {
                Error::Domain("denominator form vanishes under substitution".into())
            })?;
            *den.entry(canon).or_insert(0) += m;
            if scale != 1 {
                num = num.scale(&Rat::from_int(scale).recip().pow(m));
            }
        }
        let mut out = RatComponent { num, den };
        out.normalize();
        Ok(out)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_empty() {
            return self.num.render(var);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, &m)| {
                if m == 1 {
                    format!("({})", f.render(var))
                } else {
                    format!("({})^{}", f.render(var), m)
                }
            })
            .collect();
        format!("({}) / {}", self.num.render(var), den.join("*"))
    }
}

impl fmt::Debug for RatComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

#[derive(Serialize, Deserialize)]
struct RatComponentRepr {
    num: MPoly,
    den: Vec<(Vec<i64>, u32)>,
}

impl From<RatComponent> for RatComponentRepr {
    fn from(c: RatComponent) -> Self {
        RatComponentRepr {
            den: c.den.iter().map(|(f, &m)| (f.0.clone(), m)).collect(),
            num: c.num,
        }
    }
}

impl TryFrom<RatComponentRepr> for RatComponent {
    type Error = Error;
    fn try_from(r: RatComponentRepr) -> Result<Self> {
        let mut num = r.num;
        let mut den = Vec::new();
        for (coeffs, m) in r.den {
            if coeffs.len() != num.arity() {
                return Err(Error::ArityMismatch(coeffs.len(), num.arity()));
            }
            let (f, scale) = LinForm::canonicalize(&coeffs)
                .ok_or_else(|| Error::Parse("zero denominator form".into()))?;
            if scale != 1 {
                num = num.scale(&Rat::from_int(scale).recip().pow(m));
            }
            den.push((f, m));
        }
        Ok(RatComponent::new(num, den))
    }
}
