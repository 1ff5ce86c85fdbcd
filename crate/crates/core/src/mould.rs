//! Moulds and the flexion toolkit: `mu`, `lu`, `arit` in u- and v-form, the
//! `ari` bracket, `swap`, `push`, alternality and bialternality tests, and
//! singularity reports against the denominators `Delta_r`.
//!
//! A mould is a depth-indexed family of rational functions. Moulds here carry
//! an explicit depth bound: `None` means every unstored component is exactly
//! zero (finite support, exact at all depths); `Some(n)` means components are
//! exact up to depth `n` and unknown beyond. Binary operations propagate the
//! minimum bound, which is exact for all the flexion formulas since they only
//! consume components of depth at most the output depth.
//!
//! Rational-function identities are decided by clearing denominators and
//! comparing polynomials, never by evaluation sampling.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mpoly::{LinForm, MPoly, RatComponent};
use crate::rat::Rat;
use crate::{Error, Result};

/// Which family of commutative variables a mould is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
}

impl Kind {
    pub fn var(&self) -> &'static str {
        match self {
            Kind::U => "u",
            Kind::V => "v",
        }
    }

    pub fn toggled(&self) -> Kind {
        match self {
            Kind::U => Kind::V,
            Kind::V => Kind::U,
        }
    }
}

/// A depth-indexed family of rational-function components.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MouldRepr", into = "MouldRepr")]
pub struct Mould {
    kind: Kind,
    empty_value: Rat,
    /// `None`: unstored components are exactly zero. `Some(n)`: exact through
    /// depth `n`, unknown beyond.
    depth_bound: Option<usize>,
    components: BTreeMap<usize, RatComponent>,
}

impl Mould {
    /// The zero mould (empty value 0, no components, exact everywhere).
    pub fn zero(kind: Kind) -> Self {
        Mould {
            kind,
            empty_value: Rat::zero(),
            depth_bound: None,
            components: BTreeMap::new(),
        }
    }

    /// The mu-unit: empty value 1, all depths zero.
    pub fn unit(kind: Kind) -> Self {
        Mould {
            kind,
            empty_value: Rat::one(),
            depth_bound: None,
            components: BTreeMap::new(),
        }
    }

    pub fn from_components<I>(kind: Kind, comps: I, depth_bound: Option<usize>) -> Self
    where
        I: IntoIterator<Item = (usize, RatComponent)>,
    {
        let mut m = Mould::zero(kind);
        m.depth_bound = depth_bound;
        for (r, c) in comps {
            m.set_component(r, c);
        }
        m
    }

    /// A mould concentrated in one depth.
    pub fn concentrated(kind: Kind, depth: usize, c: RatComponent) -> Self {
        Self::from_components(kind, [(depth, c)], None)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn empty_value(&self) -> &Rat {
        &self.empty_value
    }

    pub fn set_empty_value(&mut self, v: Rat) {
        self.empty_value = v;
    }

    pub fn depth_bound(&self) -> Option<usize> {
        self.depth_bound
    }

    pub fn set_component(&mut self, depth: usize, c: RatComponent) {
        assert!(depth >= 1, "depth-0 value is the empty value");
        assert_eq!(c.arity(), depth, "component arity must equal its depth");
        if c.is_zero() {
            self.components.remove(&depth);
        } else {
            self.components.insert(depth, c);
        }
    }

    /// The depth-`r` component (zero when not stored). Callers must stay
    /// within the depth bound.
    pub fn component(&self, r: usize) -> RatComponent {
        debug_assert!(
            self.depth_bound.is_none_or(|b| r <= b),
            "component beyond depth bound"
        );
        self.components
            .get(&r)
            .cloned()
            .unwrap_or_else(|| RatComponent::zero(r))
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &RatComponent)> {
        self.components.iter().map(|(&r, c)| (r, c))
    }

    pub fn max_support(&self) -> usize {
        self.components.keys().max().copied().unwrap_or(0)
    }

    pub fn is_zero_through_bound(&self) -> bool {
        self.empty_value.is_zero() && self.components.is_empty()
    }

    /// Depths that are known exactly and may be compared or checked.
    fn check_limit(&self) -> usize {
        self.depth_bound.unwrap_or_else(|| self.max_support())
    }

    pub fn eq_through(&self, other: &Self, depth: usize) -> bool {
        if self.kind != other.kind || self.empty_value != other.empty_value {
            return false;
        }
        (1..=depth).all(|r| self.component(r) == other.component(r))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind.var(), other.kind.var()));
        }
        let bound = min_bound(self.depth_bound, other.depth_bound);
        let limit = bound.unwrap_or_else(|| self.max_support().max(other.max_support()));
        let mut out = Mould::zero(self.kind);
        out.depth_bound = bound;
        out.empty_value = &self.empty_value + &other.empty_value;
        for r in 1..=limit {
            let c = self.component(r).add(&other.component(r));
            out.set_component_allow_zero(r, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        out.empty_value = &out.empty_value * s;
        let keys: Vec<usize> = out.components.keys().copied().collect();
        for r in keys {
            let c = out.components.remove(&r).unwrap().scale(s);
            out.set_component_allow_zero(r, c);
        }
        out
    }

    fn set_component_allow_zero(&mut self, depth: usize, c: RatComponent) {
        if c.is_zero() {
            self.components.remove(&depth);
        } else {
            self.components.insert(depth, c);
        }
    }

    /// `swap` toggles the variable family. From u to v the component becomes
    /// `A(v_r, v_{r-1}-v_r, ..., v_1-v_2)`; from v to u the inverse change
    /// `A(u_1+...+u_r, u_1+...+u_{r-1}, ..., u_1)` is used, so that
    /// `swap(swap(A)) = A` exactly.
    pub fn swap(&self) -> Self {
        let mut out = Mould::zero(self.kind.toggled());
        out.depth_bound = self.depth_bound;
        out.empty_value = self.empty_value.clone();
        for (&r, c) in &self.components {
            let images: Vec<Vec<i64>> = match self.kind {
                Kind::U => (1..=r)
                    .map(|k| {
                        let mut im = vec![0i64; r];
                        if k == 1 {
                            im[r - 1] = 1; // v_r
                        } else {
                            im[r - k] = 1; // v_{r-k+1}
                            im[r - k + 1] = -1; // - v_{r-k+2}
                        }
                        im
                    })
                    .collect(),
                Kind::V => (1..=r)
                    .map(|j| {
                        let mut im = vec![0i64; r];
                        im[..=(r - j)].fill(1); // u_1 + ... + u_{r-j+1}
                        im
                    })
                    .collect(),
            };
            let sub = c
                .substitute_linear(&images, r)
                .expect("swap substitution is invertible");
            out.set_component_allow_zero(r, sub);
        }
        out
    }

    /// `push(A)(u_1,...,u_r) = A(-u_1-...-u_r, u_1, ..., u_{r-1})`.
    pub fn push(&self) -> Result<Self> {
        if self.kind != Kind::U {
            return Err(Error::KindMismatch("u", self.kind.var()));
        }
        let mut out = Mould::zero(Kind::U);
        out.depth_bound = self.depth_bound;
        out.empty_value = self.empty_value.clone();
        for (&r, c) in &self.components {
            let images: Vec<Vec<i64>> = (1..=r)
                .map(|k| {
                    if k == 1 {
                        vec![-1i64; r]
                    } else {
                        let mut im = vec![0i64; r];
                        im[k - 2] = 1;
                        im
                    }
                })
                .collect();
            let sub = c
                .substitute_linear(&images, r)
                .expect("push substitution is invertible");
            out.set_component_allow_zero(r, sub);
        }
        Ok(out)
    }

    pub fn is_push_invariant(&self) -> Result<bool> {
        let p = self.push()?;
        Ok(self.eq_through(&p, self.check_limit()))
    }

    /// Alternality: for every depth `r > 1` within the checkable range and
    /// every split `s`, the sum over inverse shuffles vanishes identically.
    pub fn is_alternal(&self) -> bool {
        let limit = self.check_limit();
        for r in 2..=limit {
            for s in 1..r {
                if !self.shuffle_sum(r, s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The shuffle sum at depth `r` and split `s`, as a rational function.
    /// Vanishing of all of these (r within range, every split) is
    /// alternality.
    pub fn shuffle_sum(&self, r: usize, s: usize) -> RatComponent {
        let comp = self.component(r);
        let mut terms: Vec<RatComponent> = Vec::new();
        for positions in subsets(r, s) {
            // sigma maps 1..s to `positions` and s+1..r to the complement;
            // argument i of A is x_{sigma^{-1}(i)}
            let mut sigma_inv = vec![0usize; r]; // position -> block slot (0-based)
            let mut in_first = vec![false; r];
            for (slot, &pos) in positions.iter().enumerate() {
                sigma_inv[pos] = slot;
                in_first[pos] = true;
            }
            let mut slot = s;
            for pos in 0..r {
                if !in_first[pos] {
                    sigma_inv[pos] = slot;
                    slot += 1;
                }
            }
            let images: Vec<Vec<i64>> = (0..r)
                .map(|i| {
                    let mut im = vec![0i64; r];
                    im[sigma_inv[i]] = 1;
                    im
                })
                .collect();
            let term = comp
                .substitute_linear(&images, r)
                .expect("permutation substitution is invertible");
            terms.push(term);
        }
        RatComponent::sum(r, &terms)
    }

    pub fn is_bialternal(&self) -> Result<bool> {
        if self.kind != Kind::U {
            return Err(Error::KindMismatch("u", self.kind.var()));
        }
        Ok(self.is_alternal() && self.swap().is_alternal())
    }

    /// Per-depth check whether `Delta_r * A_r` is polynomial, together with
    /// the cleared numerators.
    pub fn singularity_report(&self) -> Result<SingularityReport> {
        if self.kind != Kind::U {
            return Err(Error::KindMismatch("u", self.kind.var()));
        }
        let limit = self.check_limit();
        let mut per_depth = Vec::new();
        for r in 1..=limit {
            let mut c = self.component(r);
            for f in delta_u_factors(r) {
                c = c.mul_form(&f);
            }
            let polynomial = c.is_polynomial();
            per_depth.push(DepthSingularity {
                depth: r,
                polynomial,
                cleared_numerator: polynomial.then(|| c.num().clone()),
            });
        }
        Ok(SingularityReport { per_depth })
    }

    pub fn render(&self) -> String {
        let var = self.kind.var();
        let mut lines = vec![format!(
            "kind: {}, empty: {}, depth bound: {}",
            var,
            self.empty_value,
            match self.depth_bound {
                None => "none (exact)".to_string(),
                Some(n) => n.to_string(),
            }
        )];
        for (&r, c) in &self.components {
            lines.push(format!("  depth {}: {}", r, c.render(var)));
        }
        lines.join("\n")
    }
}

impl fmt::Debug for Mould {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct MouldRepr {
    kind: Kind,
    empty: Rat,
    depth_bound: Option<usize>,
    components: BTreeMap<String, RatComponent>,
}

impl From<Mould> for MouldRepr {
    fn from(m: Mould) -> Self {
        MouldRepr {
            kind: m.kind,
            empty: m.empty_value,
            depth_bound: m.depth_bound,
            components: m
                .components
                .into_iter()
                .map(|(r, c)| (r.to_string(), c))
                .collect(),
        }
    }
}

impl TryFrom<MouldRepr> for Mould {
    type Error = Error;
    fn try_from(r: MouldRepr) -> Result<Self> {
        let mut m = Mould::zero(r.kind);
        m.empty_value = r.empty;
        m.depth_bound = r.depth_bound;
        for (k, c) in r.components {
            let depth: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad depth key `{k}`")))?;
            if depth == 0 || c.arity() != depth {
                return Err(Error::ArityMismatch(c.arity(), depth));
            }
            m.set_component(depth, c);
        }
        Ok(m)
    }
}

/// Per-depth singularity flags and cleared numerators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub per_depth: Vec<DepthSingularity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSingularity {
    pub depth: usize,
    /// Whether `Delta_r * A_r` is a polynomial.
    pub polynomial: bool,
    /// `Delta_r * A_r` when it is polynomial.
    pub cleared_numerator: Option<MPoly>,
}

impl SingularityReport {
    pub fn all_polynomial(&self) -> bool {
        self.per_depth.iter().all(|d| d.polynomial)
    }
}

/// The factors of `Delta_r = u_1 ... u_r (u_1 + ... + u_r)`.
pub fn delta_u_factors(r: usize) -> Vec<LinForm> {
    let mut fs: Vec<LinForm> = (0..r).map(|i| LinForm::unit_var(r, i)).collect();
    fs.push(LinForm::all_ones(r));
    fs
}

/// The factors of `Delta_v(v_1,...,v_r) = v_1 (v_1-v_2) ... (v_{r-1}-v_r) v_r`
/// (for `r = 1` this is `v_1^2`).
pub fn delta_v_factors(r: usize) -> Vec<LinForm> {
    let mut fs = vec![LinForm::unit_var(r, 0)];
    for i in 0..r.saturating_sub(1) {
        let mut coeffs = vec![0i64; r];
        coeffs[i] = 1;
        coeffs[i + 1] = -1;
        fs.push(LinForm::canonicalize(&coeffs).unwrap().0);
    }
    fs.push(LinForm::unit_var(r, r - 1));
    fs
}

/// `Delta_r` as a polynomial.
pub fn delta_u_poly(r: usize) -> MPoly {
    delta_u_factors(r)
        .iter()
        .fold(MPoly::one(r), |p, f| p.mul(&f.as_mpoly(r)))
}

/// `U_{2i}`: concentrated in depth 1 with value `u_1^{2i}`, defined for even
/// `2i >= -2`; `U_{-2}` is `1/u_1^2`.
pub fn make_u(two_i: i64) -> Result<Mould> {
    if two_i % 2 != 0 || two_i < -2 {
        return Err(Error::Domain(format!(
            "U index {two_i} must be even and >= -2"
        )));
    }
    let c = if two_i >= 0 {
        RatComponent::from_poly(MPoly::monomial(1, vec![two_i as u32], Rat::one()))
    } else {
        RatComponent::new(MPoly::one(1), vec![(LinForm::unit_var(1, 0), 2)])
    };
    Ok(Mould::concentrated(Kind::U, 1, c))
}

fn min_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn binary_limit(a: &Mould, b: &Mould, bound: Option<usize>) -> usize {
    bound.unwrap_or_else(|| a.max_support() + b.max_support())
}

/// Embeds an arity-`k` component into arity `r` with its variables sent to
/// `x_{offset+1} .. x_{offset+k}`.
fn embed(c: &RatComponent, offset: usize, r: usize) -> RatComponent {
    let k = c.arity();
    assert!(offset + k <= r);
    let images: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            let mut im = vec![0i64; r];
            im[offset + j] = 1;
            im
        })
        .collect();
    c.substitute_linear(&images, r)
        .expect("embedding is injective on variables")
}

/// `mu(A,B)(u_1,...,u_r) = sum_{i=0}^r A(u_1,...,u_i) B(u_{i+1},...,u_r)`;
/// empty values multiply.
pub fn mould_mu(a: &Mould, b: &Mould) -> Result<Mould> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch(a.kind.var(), b.kind.var()));
    }
    let bound = min_bound(a.depth_bound, b.depth_bound);
    let limit = binary_limit(a, b, bound);
    let mut out = Mould::zero(a.kind);
    out.depth_bound = bound;
    out.empty_value = &a.empty_value * &b.empty_value;
    for r in 1..=limit {
        // i = 0 and i = r use the empty values
        let mut terms = vec![
            embed(&b.component(r), 0, r).scale(&a.empty_value),
            embed(&a.component(r), 0, r).scale(&b.empty_value),
        ];
        for i in 1..r {
            let left = embed(&a.component(i), 0, r);
            let right = embed(&b.component(r - i), i, r);
            terms.push(left.mul(&right));
        }
        out.set_component_allow_zero(r, RatComponent::sum(r, &terms));
    }
    Ok(out)
}

/// `lu(A,B) = mu(A,B) - mu(B,A)`.
pub fn mould_lu(a: &Mould, b: &Mould) -> Result<Mould> {
    mould_mu(a, b)?.sub(&mould_mu(b, a)?)
}

fn require_ari_operand(m: &Mould) -> Result<()> {
    if !m.empty_value.is_zero() {
        return Err(Error::Domain(
            "flexion bracket operands must have empty value 0".into(),
        ));
    }
    Ok(())
}

/// `arit(B) . A` — the flexion derivation operator, dispatching on the
/// variable family. Both moulds must have empty value 0 and equal kinds.
pub fn mould_arit(b: &Mould, a: &Mould) -> Result<Mould> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch(a.kind.var(), b.kind.var()));
    }
    require_ari_operand(a)?;
    require_ari_operand(b)?;
    let bound = min_bound(a.depth_bound, b.depth_bound);
    let limit = binary_limit(a, b, bound);
    let mut out = Mould::zero(a.kind);
    out.depth_bound = bound;
    for r in 2..=limit {
        let total = match a.kind {
            Kind::U => arit_u_depth(b, a, r),
            Kind::V => arit_v_depth(b, a, r),
        };
        out.set_component_allow_zero(r, total);
    }
    Ok(out)
}

/// u-form: `(arit(B).A)(u_1,...,u_r) =
///   sum_{0<=k<l<r} A(a<|c) B(b) - sum_{1<=k<l<=r} A(a|>c) B(b)`
/// where `w = abc`, `a<|c` merges the block `b` with the first entry of `c`,
/// and `a|>c` merges it with the last entry of `a`.
fn arit_u_depth(b: &Mould, a: &Mould, r: usize) -> RatComponent {
    let mut terms: Vec<RatComponent> = Vec::new();
    for k in 0..r {
        for l in (k + 1)..=r {
            let m = l - k; // |b| >= 1
            let outer = r - m;
            if outer == 0 {
                continue; // A(empty) = 0 for bracket operands
            }
            let b_comp = b.component(m);
            if b_comp.is_zero() {
                continue;
            }
            let a_comp = a.component(outer);
            if a_comp.is_zero() {
                continue;
            }
            let b_embedded = embed(&b_comp, k, r);
            if l < r {
                // first sum: c nonempty; A(u_1..u_k, u_{k+1}+...+u_{l+1}, u_{l+2}..u_r)
                let images: Vec<Vec<i64>> = (0..outer)
                    .map(|j| {
                        let mut im = vec![0i64; r];
                        if j < k {
                            im[j] = 1;
                        } else if j == k {
                            im[k..=l].fill(1);
                        } else {
                            im[l + (j - k)] = 1;
                        }
                        im
                    })
                    .collect();
                let a_sub = a_comp
                    .substitute_linear(&images, r)
                    .expect("flexion substitution keeps forms nonzero");
                terms.push(a_sub.mul(&b_embedded));
            }
            if k >= 1 {
                // second sum: a nonempty; A(u_1..u_{k-1}, u_k+...+u_l, u_{l+1}..u_r)
                let images: Vec<Vec<i64>> = (0..outer)
                    .map(|j| {
                        let mut im = vec![0i64; r];
                        if j < k - 1 {
                            im[j] = 1;
                        } else if j == k - 1 {
                            im[(k - 1)..l].fill(1);
                        } else {
                            im[l + (j - k)] = 1;
                        }
                        im
                    })
                    .collect();
                let a_sub = a_comp
                    .substitute_linear(&images, r)
                    .expect("flexion substitution keeps forms nonzero");
                terms.push(a_sub.mul(&b_embedded).neg());
            }
        }
    }
    RatComponent::sum(r, &terms)
}

/// v-form: `(arit(B).A)(v_1,...,v_r) =
///   sum_{0<=k<l<r} A(ac) B(b_|) - sum_{1<=k<l<=r} A(ac) B(|_b)`
/// with `b_|` subtracting `v_{l+1}` and `|_b` subtracting `v_k` from the
/// middle block.
fn arit_v_depth(b: &Mould, a: &Mould, r: usize) -> RatComponent {
    let mut terms: Vec<RatComponent> = Vec::new();
    for k in 0..r {
        for l in (k + 1)..=r {
            let m = l - k;
            let outer = r - m;
            if outer == 0 {
                continue;
            }
            let b_comp = b.component(m);
            let a_comp = a.component(outer);
            if b_comp.is_zero() || a_comp.is_zero() {
                continue;
            }
            // A(ac): plain concatenation of the outer variables
            let a_images: Vec<Vec<i64>> = (0..outer)
                .map(|j| {
                    let mut im = vec![0i64; r];
                    if j < k {
                        im[j] = 1;
                    } else {
                        im[l + (j - k)] = 1;
                    }
                    im
                })
                .collect();
            let a_sub = a_comp
                .substitute_linear(&a_images, r)
                .expect("concatenation substitution");
            if l < r {
                // B(v_{k+1}-v_{l+1}, ..., v_l-v_{l+1})
                let b_images: Vec<Vec<i64>> = (0..m)
                    .map(|t| {
                        let mut im = vec![0i64; r];
                        im[k + t] = 1;
                        im[l] = -1;
                        im
                    })
                    .collect();
                match b_comp.substitute_linear(&b_images, r) {
                    Ok(b_sub) => terms.push(a_sub.mul(&b_sub)),
                    Err(_) => panic!("v-flexion substitution annihilated a denominator"),
                }
            }
            if k >= 1 {
                // B(v_{k+1}-v_k, ..., v_l-v_k)
                let b_images: Vec<Vec<i64>> = (0..m)
                    .map(|t| {
                        let mut im = vec![0i64; r];
                        im[k + t] = 1;
                        im[k - 1] = -1;
                        im
                    })
                    .collect();
                match b_comp.substitute_linear(&b_images, r) {
                    Ok(b_sub) => terms.push(a_sub.mul(&b_sub).neg()),
                    Err(_) => panic!("v-flexion substitution annihilated a denominator"),
                }
            }
        }
    }
    RatComponent::sum(r, &terms)
}

/// `ari(A,B) = arit(B).A - arit(A).B + lu(A,B)`.
pub fn mould_ari(a: &Mould, b: &Mould) -> Result<Mould> {
    let t1 = mould_arit(b, a)?;
    let t2 = mould_arit(a, b)?;
    let t3 = mould_lu(a, b)?;
    t1.sub(&t2)?.add(&t3)
}

/// Boundary identity for checked numerators: for a v-kind mould `M` with
/// `Delta_v * M` polynomial in every depth, verifies
/// `M-check(0, v_2, ..., v_r) = M-check(v_2, ..., v_r, 0)` per depth.
///
/// The identity is a theorem for alternal `M`; alternality itself is the
/// caller's lookout, which is what makes the boolean informative.
pub fn check_boundary_identity(m: &Mould) -> Result<bool> {
    if m.kind != Kind::V {
        return Err(Error::KindMismatch("v", m.kind.var()));
    }
    let limit = m.check_limit();
    for r in 1..=limit {
        let mut c = m.component(r);
        for f in delta_v_factors(r) {
            c = c.mul_form(&f);
        }
        if !c.is_polynomial() {
            return Err(Error::Domain(format!(
                "Delta_v * M is not polynomial at depth {r}"
            )));
        }
        if r < 2 {
            continue;
        }
        let check = c.num();
        // left: variables (0, v_2, ..., v_r) -> arity r-1 in (v_2..v_r)
        let left_images: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let mut im = vec![0i64; r - 1];
                if j > 0 {
                    im[j - 1] = 1;
                }
                im
            })
            .collect();
        // right: variables (v_2, ..., v_r, 0)
        let right_images: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let mut im = vec![0i64; r - 1];
                if j < r - 1 {
                    im[j] = 1;
                }
                im
            })
            .collect();
        let left = check.substitute_linear(&left_images, r - 1);
        let right = check.substitute_linear(&right_images, r - 1);
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All size-`s` subsets of `0..r` in lexicographic order.
fn subsets(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, s: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == s {
            out.push(acc.clone());
            return;
        }
        for i in start..r {
            if r - i < s - acc.len() {
                break;
            }
            acc.push(i);
            rec(i + 1, r, s, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, s, &mut Vec::new(), &mut out);
    out
}
