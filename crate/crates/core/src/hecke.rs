//! Iwahori–Hecke algebra of an extended affine Weyl group, with unequal
//! parameters, and the Bernstein presentation built on top of it.
//!
//! Elements are finitely supported sums `sum_x c_x(v) T_x` with Laurent
//! coefficients in the square root `v` of `q` (so `v^2 = q`). Products are
//! computed by expanding one factor along reduced words and applying the
//! quadratic relation `T_s^2 = (q_s - 1) T_s + q_s` letter by letter;
//! length-zero elements act by translation of the support. On top of the
//! T-basis sit the Bernstein elements `Theta_lambda` (normalized
//! translations, extended from the dominant cone by the cocycle rule) and
//! the central sums `z_mu` over a minuscule orbit.

use std::collections::BTreeMap;
use std::fmt;

use crate::affine_weyl::{ExtAffineWeylElement, ExtAffineWeylGroup};
use crate::error::{Error, Result};
use crate::galois_lattice::FgElement;
use crate::root_data::{dominant_representative, PinnedAutomorphism, RootDatum, WEYL_CAP};

/// Largest dominance shift attempted when splitting a cocharacter as a
/// difference of dominant ones. The shift needed is bounded by the largest
/// root pairing of the input, so this is generous.
const MAX_DOMINANCE_SHIFT: i64 = 1_000;

/// Bond orders of simple pairs are probed up to this order; anything larger
/// is treated as an even or infinite bond (no parameter constraint).
const MAX_BOND_PROBE: usize = 12;

// ---------------------------------------------------------------------------
// Laurent polynomials in v.

/// Integer Laurent polynomial in the formal square root `v` of `q`.
///
/// Invariant: no explicit zero coefficients are stored, so derived equality
/// is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * v^e`.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `q^k = v^{2k}`.
    pub fn q_power(k: i64) -> Self {
        Self::monomial(2 * k, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            let entry = terms.entry(e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                terms.remove(&e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let entry = terms.entry(e1 + e2).or_insert(0);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != 0);
        LaurentPoly { terms }
    }

    /// Specialization at `v = 1`, i.e. at `q = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Exponent/coefficient pairs in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms.iter().map(|(&e, &c)| (e, c)).collect()
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(e, c) in pairs {
            out = out.add(&Self::monomial(e, c));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "v")?,
                1 => write!(f, "{a}v")?,
                _ if a == 1 => write!(f, "v^{e}")?,
                _ => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Elements and the algebra.

/// Finitely supported `sum_x c_x(v) T_x`.
///
/// Invariant: stored coefficients are nonzero, and every key carries the
/// tag of the algebra that created the element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<ExtAffineWeylElement, LaurentPoly>,
    tag: u64,
}

impl HeckeElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements in the support.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExtAffineWeylElement> {
        self.terms.keys()
    }

    pub fn coeff(&self, x: &ExtAffineWeylElement) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExtAffineWeylElement, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Coefficients specialized at `q = 1`, zeros dropped.
    pub fn at_q_one(&self) -> BTreeMap<ExtAffineWeylElement, i64> {
        self.terms
            .iter()
            .map(|(x, c)| (x.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

/// The Hecke algebra of an extended affine Weyl group with parameter
/// exponents `params[k]` attached to the simple affine generators, so
/// `T_{s_k}` satisfies `T^2 = (v^{2c_k} - 1) T + v^{2c_k}`.
pub struct HeckeAlgebra {
    pub group: ExtAffineWeylGroup,
    pub params: Vec<i64>,
    tag: u64,
}

impl HeckeAlgebra {
    /// Builds the algebra, checking that the parameters are constant on
    /// W-conjugacy classes of simple generators (odd bonds and Omega
    /// conjugation), which is what makes the quadratic relations consistent.
    pub fn new(group: ExtAffineWeylGroup, params: &[i64]) -> Result<Self> {
        let m = group.num_simple();
        if params.len() != m {
            return Err(Error::validation(format!(
                "expected {m} parameters, got {}",
                params.len()
            )));
        }
        if params.iter().any(|&c| c < 1) {
            return Err(Error::validation("parameter exponents must be >= 1"));
        }
        // Odd bond m(s,s') forces equal parameters.
        for k in 0..m {
            for l in (k + 1)..m {
                if let Some(order) = bond_order(&group, k, l) {
                    if order % 2 == 1 && params[k] != params[l] {
                        return Err(Error::validation(format!(
                            "generators {k} and {l} are braid-conjugate (bond {order}) \
                             but have parameters {} != {}",
                            params[k], params[l]
                        )));
                    }
                }
            }
        }
        // Omega conjugation permutes the generators and must preserve c.
        for tau in group.omega_generators().to_vec() {
            let tau_inv = group.inverse(&tau);
            for k in 0..m {
                let conj =
                    group.multiply(&group.multiply(&tau, &group.simple_reflection(k)), &tau_inv);
                let j = (0..m)
                    .find(|&j| group.simple_reflection(j) == conj)
                    .ok_or_else(|| {
                        Error::validation("length-zero conjugation does not permute generators")
                    })?;
                if params[k] != params[j] {
                    return Err(Error::validation(format!(
                        "generators {k} and {j} are conjugate under a length-zero element \
                         but have parameters {} != {}",
                        params[k], params[j]
                    )));
                }
            }
        }
        let tag = group.identity().group_tag() ^ fnv(params);
        Ok(HeckeAlgebra {
            group,
            params: params.to_vec(),
            tag,
        })
    }

    /// Equal parameters `c_k = 1` for every generator.
    pub fn with_default_params(group: ExtAffineWeylGroup) -> Result<Self> {
        let params = vec![1; group.num_simple()];
        Self::new(group, &params)
    }

    pub fn equal_parameters(&self) -> bool {
        self.params.windows(2).all(|w| w[0] == w[1])
    }

    /// `q_s = v^{2 c_s}` for generator `k`.
    fn q_s(&self, k: usize) -> LaurentPoly {
        LaurentPoly::monomial(2 * self.params[k], 1)
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement {
            terms: BTreeMap::new(),
            tag: self.tag,
        }
    }

    pub fn one(&self) -> HeckeElement {
        self.t_basis(&self.group.identity())
            .expect("identity is in the group")
    }

    /// The basis element `T_x`.
    pub fn t_basis(&self, x: &ExtAffineWeylElement) -> Result<HeckeElement> {
        self.check_element(x)?;
        let mut terms = BTreeMap::new();
        terms.insert(x.clone(), LaurentPoly::one());
        Ok(HeckeElement {
            terms,
            tag: self.tag,
        })
    }

    fn check_element(&self, x: &ExtAffineWeylElement) -> Result<()> {
        if x.group_tag() != self.group.identity().group_tag() {
            return Err(Error::validation("element belongs to a different group"));
        }
        Ok(())
    }

    fn check_tag(&self, a: &HeckeElement) -> Result<()> {
        if a.tag != self.tag {
            return Err(Error::validation(
                "Hecke element belongs to a different algebra or parameter set",
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let mut terms = a.terms.clone();
        for (x, c) in &b.terms {
            let entry = terms.entry(x.clone()).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(x);
            }
        }
        Ok(HeckeElement {
            terms,
            tag: self.tag,
        })
    }

    pub fn sub(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.add(a, &self.scale(b, &LaurentPoly::monomial(0, -1)))
    }

    pub fn scale(&self, a: &HeckeElement, c: &LaurentPoly) -> HeckeElement {
        if c.is_zero() {
            return HeckeElement {
                terms: BTreeMap::new(),
                tag: a.tag,
            };
        }
        HeckeElement {
            terms: a.terms.iter().map(|(x, p)| (x.clone(), p.mul(c))).collect(),
            tag: a.tag,
        }
    }

    /// Right multiplication by `T_{s_k}` via the quadratic relation.
    fn right_mul_gen(&self, a: &HeckeElement, k: usize) -> HeckeElement {
        let s = self.group.simple_reflection(k);
        let q = self.q_s(k);
        let q_minus_one = q.sub(&LaurentPoly::one());
        let mut out = self.zero();
        for (x, c) in &a.terms {
            let xs = self.group.multiply(x, &s);
            if self.group.right_descent(x, k) {
                // T_x T_s = q_s T_{xs} + (q_s - 1) T_x.
                add_term(&mut out.terms, xs, c.mul(&q));
                add_term(&mut out.terms, x.clone(), c.mul(&q_minus_one));
            } else {
                add_term(&mut out.terms, xs, c.clone());
            }
        }
        out
    }

    /// Right multiplication by `T_{s_k}^{-1} = q_s^{-1} T_{s_k} + (q_s^{-1} - 1)`.
    fn right_mul_gen_inv(&self, a: &HeckeElement, k: usize) -> HeckeElement {
        let q_inv = LaurentPoly::monomial(-2 * self.params[k], 1);
        let q_inv_minus_one = q_inv.sub(&LaurentPoly::one());
        let first = self.scale(&self.right_mul_gen(a, k), &q_inv);
        let second = self.scale(a, &q_inv_minus_one);
        self.add(&first, &second).expect("tags match")
    }

    /// Right multiplication by the group-like `T_tau`, `tau` of length zero.
    fn right_mul_length_zero(&self, a: &HeckeElement, tau: &ExtAffineWeylElement) -> HeckeElement {
        debug_assert_eq!(self.group.length(tau), 0);
        let mut terms = BTreeMap::new();
        for (x, c) in &a.terms {
            terms.insert(self.group.multiply(x, tau), c.clone());
        }
        HeckeElement {
            terms,
            tag: self.tag,
        }
    }

    /// Right multiplication by `T_y` for a single group element `y`,
    /// expanding `y` along a reduced word.
    fn right_mul_basis(&self, a: &HeckeElement, y: &ExtAffineWeylElement) -> HeckeElement {
        let (word, tau) = self.group.reduced_word(y);
        let mut cur = a.clone();
        for k in word {
            cur = self.right_mul_gen(&cur, k);
        }
        self.right_mul_length_zero(&cur, &tau)
    }

    /// Product in the T-basis.
    pub fn t_multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let mut out = self.zero();
        for (y, c) in &b.terms {
            let piece = self.scale(&self.right_mul_basis(a, y), c);
            out = self.add(&out, &piece)?;
        }
        Ok(out)
    }

    /// `T_x^{-1}`, by inverting a reduced word letter by letter.
    pub fn invert_basis(&self, x: &ExtAffineWeylElement) -> Result<HeckeElement> {
        self.check_element(x)?;
        let (word, tau) = self.group.reduced_word(x);
        let mut cur = self.t_basis(&self.group.inverse(&tau))?;
        for &k in word.iter().rev() {
            cur = self.right_mul_gen_inv(&cur, k);
        }
        Ok(cur)
    }

    /// Whether `a` commutes with every `T_{s_k}` and every length-zero
    /// generator, i.e. lies in the center.
    pub fn is_central(&self, a: &HeckeElement) -> Result<bool> {
        self.check_tag(a)?;
        for k in 0..self.group.num_simple() {
            let g = self.t_basis(&self.group.simple_reflection(k))?;
            if self.t_multiply(a, &g)? != self.t_multiply(&g, a)? {
                return Ok(false);
            }
        }
        for tau in self.group.omega_generators().to_vec() {
            let g = self.t_basis(&tau)?;
            if self.t_multiply(a, &g)? != self.t_multiply(&g, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // -----------------------------------------------------------------------
    // Bernstein elements.

    /// A translation element pairing to 2 with every simple relative root:
    /// the sum of the minimal translations over all positive directions.
    fn strictly_dominant_shift(&self) -> FgElement {
        let rel = &self.group.relative;
        let g = &rel.coinv.group;
        let mut chi = g.zero();
        for d in 0..rel.positive_roots.len() {
            chi = g.add(&chi, &rel.minimal_translation_element(d));
        }
        for &k in &rel.simple_indices {
            let p: i64 = rel.positive_roots[k]
                .iter()
                .zip(&chi.free)
                .map(|(a, b)| a * b)
                .sum();
            assert_eq!(p, 2, "shift element is not strictly dominant");
        }
        chi
    }

    /// Bernstein element `Theta_lambda`: for dominant `lambda` this is
    /// `v^{-l(t_lambda)} T_{t_lambda}`, and in general it is defined by the
    /// multiplicative extension `Theta_{lambda} = Theta_{lambda_1}
    /// Theta_{lambda_2}^{-1}` for any splitting `lambda = lambda_1 -
    /// lambda_2` into dominant parts. Requires equal parameters.
    pub fn theta(&self, lambda: &FgElement) -> Result<HeckeElement> {
        self.theta_shifted(lambda, 0)
    }

    /// `theta` computed through the splitting with `N + extra` copies of the
    /// dominance shift; the result does not depend on `extra`, which the
    /// tests exercise.
    pub(crate) fn theta_shifted(&self, lambda: &FgElement, extra: i64) -> Result<HeckeElement> {
        if !self.equal_parameters() {
            return Err(Error::validation(
                "Bernstein elements need equal parameters",
            ));
        }
        let rel = &self.group.relative;
        let g = &rel.coinv.group;
        let lambda = g.reduce(lambda);
        let chi = self.strictly_dominant_shift();
        let mut n = extra.max(0);
        loop {
            let cand = g.add(&lambda, &g.scalar_mul(n, &chi));
            if rel.is_dominant_free(&cand.free) {
                break;
            }
            n += 1;
            if n - extra.max(0) > MAX_DOMINANCE_SHIFT {
                return Err(Error::cap("dominance shift exceeded bound"));
            }
        }
        let lambda1 = g.add(&lambda, &g.scalar_mul(n, &chi));
        let lambda2 = g.scalar_mul(n, &chi);
        let t1 = self.group.translation(&lambda1)?;
        let t2 = self.group.translation(&lambda2)?;
        let l1 = self.group.length(&t1);
        let l2 = self.group.length(&t2);
        // (v^{-l1} T_{t1}) (v^{-l2} T_{t2})^{-1} = v^{l2-l1} T_{t1} T_{t2}^{-1}.
        let pos = self.t_basis(&t1)?;
        let neg = self.invert_basis(&t2)?;
        let prod = self.t_multiply(&pos, &neg)?;
        Ok(self.scale(&prod, &LaurentPoly::monomial(l2 - l1, 1)))
    }

    /// Central Bernstein sum `z_mu = sum_{lambda in Lambda} Theta_lambda`
    /// over the finite Weyl orbit of a minuscule cocharacter. Split groups
    /// with equal parameters only. Centrality is verified before returning.
    pub fn bernstein_z_mu(&self, mu: &[i64]) -> Result<HeckeElement> {
        let rel = &self.group.relative;
        if !rel.automorphism.matrix.is_identity() {
            return Err(Error::validation(
                "central Bernstein sums are implemented for split groups only",
            ));
        }
        if !self.equal_parameters() {
            return Err(Error::validation(
                "central Bernstein sums need equal parameters",
            ));
        }
        let dom = dominant_representative(&rel.ambient, mu);
        if !rel.ambient.is_minuscule(&dom) {
            return Err(Error::validation(format!(
                "{mu:?} is not minuscule, z_mu is only defined for minuscule classes"
            )));
        }
        let orbit = crate::admissible::lambda_orbit(&self.group, mu)?;
        let mut z = self.zero();
        for lambda in &orbit {
            z = self.add(&z, &self.theta(lambda)?)?;
        }
        if !self.is_central(&z)? {
            return Err(Error::validation(
                "Bernstein sum failed the centrality check",
            ));
        }
        Ok(z)
    }
}

fn add_term(
    terms: &mut BTreeMap<ExtAffineWeylElement, LaurentPoly>,
    x: ExtAffineWeylElement,
    c: LaurentPoly,
) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&x) {
        Some(entry) => {
            *entry = entry.add(&c);
            if entry.is_zero() {
                terms.remove(&x);
            }
        }
        None => {
            terms.insert(x, c);
        }
    }
}

/// Order of `s_k s_l` if it is at most `MAX_BOND_PROBE`, else `None`.
fn bond_order(group: &ExtAffineWeylGroup, k: usize, l: usize) -> Option<usize> {
    let p = group.multiply(&group.simple_reflection(k), &group.simple_reflection(l));
    let mut cur = p.clone();
    for order in 1..=MAX_BOND_PROBE {
        if cur == group.identity() {
            return Some(order);
        }
        cur = group.multiply(&cur, &p);
    }
    None
}

fn fnv(data: &[i64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

// ---------------------------------------------------------------------------
// Support comparison against the admissible set.

/// How the support of a central Bernstein sum sits inside `Adm(mu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMuSupportReport {
    /// Support is contained in the admissible set.
    pub subset: bool,
    /// Every extreme (maximal-length) admissible element carries a nonzero
    /// coefficient.
    pub extremes_nonzero: bool,
    /// Support equals the admissible set exactly. Reported, not asserted:
    /// interior coefficients can vanish in principle.
    pub exact: bool,
}

/// Compares the support of `z` with `Adm(mu)`.
pub fn z_mu_support(
    algebra: &HeckeAlgebra,
    z: &HeckeElement,
    mu: &[i64],
) -> Result<ZMuSupportReport> {
    let adm = crate::admissible::adm(&algebra.group, mu)?;
    let subset = z.support().all(|x| adm.contains(x));
    let top = adm.lengths.iter().copied().max().unwrap_or(0);
    let extremes_nonzero = adm
        .elements
        .iter()
        .zip(&adm.lengths)
        .filter(|(_, &l)| l == top)
        .all(|(x, _)| !z.coeff(x).is_zero());
    let exact = subset && z.support_len() == adm.len();
    Ok(ZMuSupportReport {
        subset,
        extremes_nonzero,
        exact,
    })
}

// ---------------------------------------------------------------------------
// Numerical shadows of the minuscule cocharacter.

/// The sign, weight pairing, and coset label attached to a minuscule
/// dominant cocharacter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AMu {
    /// `(-1)^{2(rho, mu)}`.
    pub sign: i64,
    /// `2(rho, mu) = <2rho, mu>` as an integer.
    pub two_rho_pairing: i64,
    /// The dominant representative labeling the coset.
    pub coset: Vec<i64>,
}

/// Computes the `(sign, pairing, coset)` triple for minuscule dominant `mu`.
pub fn a_mu_minuscule(rd: &RootDatum, mu: &[i64]) -> Result<AMu> {
    if mu.len() != rd.rank {
        return Err(Error::validation("cocharacter length != rank"));
    }
    if !rd.is_dominant(mu) {
        return Err(Error::validation("mu must be dominant"));
    }
    if !rd.is_minuscule(mu) {
        return Err(Error::validation("mu must be minuscule"));
    }
    let pairing: i64 = rd.two_rho.iter().zip(mu).map(|(a, b)| a * b).sum();
    let sign = if pairing % 2 == 0 { 1 } else { -1 };
    Ok(AMu {
        sign,
        two_rho_pairing: pairing,
        coset: mu.to_vec(),
    })
}

/// Dimension of the inertia invariants of the minuscule representation
/// attached to `mu`: the number of `gamma`-orbits on the weight orbit.
///
/// For minuscule representations the pinned automorphism permutes a weight
/// basis without signs, so the fixed-space dimension is the orbit count;
/// the test suite checks this against explicit representation matrices.
pub fn inertia_invariant_dim(
    rd: &RootDatum,
    gamma: &PinnedAutomorphism,
    mu: &[i64],
) -> Result<usize> {
    if mu.len() != rd.rank {
        return Err(Error::validation("cocharacter length != rank"));
    }
    let dom = dominant_representative(rd, mu);
    if !rd.is_minuscule(&dom) {
        return Err(Error::validation("mu must be minuscule"));
    }
    // gamma permutes the dominant cone, so stability of the class is
    // stability of the dominant representative.
    if gamma.matrix.apply(&dom) != dom {
        return Err(Error::validation(
            "the conjugacy class of mu is not stable under gamma",
        ));
    }
    let orbit = rd.weyl_orbit(&dom, WEYL_CAP)?;
    let index: BTreeMap<Vec<i64>, usize> = orbit
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut seen = vec![false; orbit.len()];
    let mut orbits = 0usize;
    for start in 0..orbit.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            let image = gamma.matrix.apply(&orbit[at]);
            at = *index
                .get(&image)
                .ok_or_else(|| Error::validation("gamma does not preserve the weight orbit"))?;
        }
    }
    Ok(orbits)
}
