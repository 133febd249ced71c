//! The extended affine Weyl group W~ = X_I x| W_0 of a folded root datum.
//!
//! Elements are kept in the normal form `t_lambda * w` with `lambda` in the
//! full coinvariant lattice (torsion included) and `w` in the finite
//! relative Weyl group. Lengths come from the Iwahori-Matsumoto formula over
//! the normalized relative roots; the torsion part of a translation is
//! invisible to the length but participates in multiplication and in the
//! component group Omega.
//!
//! The affine simple generator of each irreducible component of the relative
//! system is `t_nu * s_theta` for the highest direction `theta`, where the
//! translation is corrected in its torsion coordinates so that it lies in
//! the image of the coroot lattice and is negated by `s_theta`; both are
//! needed for `Omega ~ pi_1` and for `s_0^2 = 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::galois_lattice::{FgAbelianGroup, FgElement};
use crate::intmat::{smith_normal_form, Mat};
use crate::root_data::{fold, PinnedAutomorphism, RelativeRootDatum, RootDatum, WEYL_CAP};

/// Default radius for length-ball enumerations.
pub const DEFAULT_BALL_RADIUS: usize = 20;
/// Default bound on the free Omega coordinates in ball enumerations.
pub const DEFAULT_OMEGA_BOUND: i64 = 2;

/// Enumeration limits.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Maximum finite Weyl group size.
    pub weyl: usize,
    /// Maximum number of elements a single enumeration may materialize.
    pub elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: WEYL_CAP,
            elements: 2_000_000,
        }
    }
}

/// An element `t_lambda * w` of the extended affine Weyl group.
///
/// `finite` indexes into the owning group's finite Weyl element table; the
/// tag ties the element to the group that created it, so elements of
/// different ambient groups cannot be mixed silently.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtAffineWeylElement {
    pub translation: FgElement,
    pub finite: usize,
    tag: u64,
}

impl ExtAffineWeylElement {
    pub fn group_tag(&self) -> u64 {
        self.tag
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The Iwahori-Weyl group with its simple affine generators, length,
/// Bruhat order, and Omega (length-zero) subgroup.
#[derive(Clone, Debug)]
pub struct ExtAffineWeylGroup {
    pub relative: RelativeRootDatum,
    pub caps: Caps,
    w0: Vec<Mat>,
    w0_index: BTreeMap<Mat, usize>,
    w0_inv: Vec<usize>,
    /// proj(w) . v_reg per finite element; the sign of <a, w0_vreg[w]>
    /// decides whether w^{-1} a is positive.
    w0_vreg: Vec<Vec<i64>>,
    identity_idx: usize,
    simple_gens: Vec<ExtAffineWeylElement>,
    n_finite: usize,
    /// Direction indices per irreducible component of the relative system.
    pub components: Vec<Vec<usize>>,
    /// Highest direction per component.
    pub theta: Vec<usize>,
    pub pi1: FgAbelianGroup,
    pi1_u: Mat,
    /// (Smith position, order) per pi_1 generator; order 0 means free.
    pi1_positions: Vec<(usize, i64)>,
    omega_gens: Vec<ExtAffineWeylElement>,
    tag: u64,
}

/// Builds the Iwahori-Weyl group of `(rd, gamma)`.
pub fn make_iwahori_weyl(
    rd: &RootDatum,
    gamma: &PinnedAutomorphism,
    caps: Caps,
) -> Result<ExtAffineWeylGroup> {
    let rel = fold(rd, gamma)?;
    let n = rd.rank;

    // Enumerate the finite relative Weyl group, tracking inverses along the
    // BFS (the generators are involutions).
    let id = Mat::identity(n);
    let mut inv_of: BTreeMap<Mat, Mat> = BTreeMap::new();
    inv_of.insert(id.clone(), id.clone());
    let mut queue: VecDeque<Mat> = VecDeque::new();
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        let w_inv = inv_of
            .get(&w)
            .expect("queued elements have inverses")
            .clone();
        for g in &rel.w0_generators_abs {
            let x = g.mul(&w);
            if !inv_of.contains_key(&x) {
                if inv_of.len() >= caps.weyl {
                    return Err(Error::cap(format!(
                        "finite Weyl group exceeds {}",
                        caps.weyl
                    )));
                }
                inv_of.insert(x.clone(), w_inv.mul(g));
                queue.push_back(x);
            }
        }
    }
    let w0: Vec<Mat> = inv_of.keys().cloned().collect();
    let w0_index: BTreeMap<Mat, usize> =
        w0.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let w0_inv: Vec<usize> = w0.iter().map(|m| w0_index[&inv_of[m]]).collect();
    let w0_vreg: Vec<Vec<i64>> = w0
        .iter()
        .map(|m| rel.proj_of(m).apply(&rel.v_reg))
        .collect();
    let identity_idx = w0_index[&Mat::identity(n)];

    // Group tag: a stable digest of the construction data.
    let mut tag_bytes: Vec<u8> = Vec::new();
    tag_bytes.extend_from_slice(rd.label.as_bytes());
    tag_bytes.push(0);
    tag_bytes.extend(gamma.order.to_le_bytes());
    for i in 0..n {
        for j in 0..n {
            tag_bytes.extend(gamma.matrix[(i, j)].to_le_bytes());
        }
    }
    for r in &rd.roots {
        for &x in r {
            tag_bytes.extend(x.to_le_bytes());
        }
    }
    let tag = fnv1a(&tag_bytes);

    // Irreducible components of the relative system: directions d, d' are
    // linked when <a_d, nu_d'> != 0.
    let ndir = rel.positive_roots.len();
    let mut comp_id: Vec<usize> = (0..ndir).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        if comp[i] != i {
            let r = find(comp, comp[i]);
            comp[i] = r;
        }
        comp[i]
    }
    for i in 0..ndir {
        for j in (i + 1)..ndir {
            if dot(&rel.positive_roots[i], &rel.nu[j]) != 0 {
                let (a, b) = (find(&mut comp_id, i), find(&mut comp_id, j));
                if a != b {
                    comp_id[a] = b;
                }
            }
        }
    }
    let mut comp_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..ndir {
        let r = find(&mut comp_id, i);
        comp_map.entry(r).or_default().push(i);
    }
    let components: Vec<Vec<usize>> = comp_map.into_values().collect();
    let mut theta = Vec::new();
    for comp in &components {
        let grade = |d: usize| dot(&rel.positive_roots[d], &rel.v_reg);
        let &best = comp
            .iter()
            .max_by_key(|&&d| grade(d))
            .expect("nonempty component");
        assert!(
            comp.iter().all(|&d| d == best || grade(d) < grade(best)),
            "highest direction is not unique"
        );
        theta.push(best);
    }

    // pi_1 = X / (coroot lattice + (gamma-1)X), presented by the Smith form
    // of the stacked matrix.
    let mut stacked = Mat::zero(n, rd.coroots.len() + n);
    for (j, c) in rd.coroots.iter().enumerate() {
        for i in 0..n {
            stacked[(i, j)] = c[i];
        }
    }
    let gm1 = gamma.matrix.sub(&Mat::identity(n));
    for i in 0..n {
        for j in 0..n {
            stacked[(i, rd.coroots.len() + j)] = gm1[(i, j)];
        }
    }
    let pi1_snf = smith_normal_form(&stacked);
    let mut pi1_positions = Vec::new();
    let mut pi1_torsion = Vec::new();
    let mut pi1_free = 0usize;
    for i in 0..n {
        let d = pi1_snf.diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            pi1_positions.push((i, 0));
            pi1_free += 1;
        } else if d >= 2 {
            pi1_positions.push((i, d));
            pi1_torsion.push(d);
        }
    }
    // Keep torsion generators before free ones, matching FgElement layout.
    pi1_positions.sort_by_key(|&(i, d)| (d == 0, i));
    let pi1 = FgAbelianGroup::new(pi1_free, pi1_torsion);

    let mut group = ExtAffineWeylGroup {
        relative: rel,
        caps,
        w0,
        w0_index,
        w0_inv,
        w0_vreg,
        identity_idx,
        simple_gens: Vec::new(),
        n_finite: 0,
        components,
        theta,
        pi1,
        pi1_u: pi1_snf.u,
        pi1_positions,
        omega_gens: Vec::new(),
        tag,
    };

    // Finite simple generators, one per folded node orbit.
    let mut simple_gens = Vec::new();
    for g in &group.relative.w0_generators_abs {
        let idx = *group
            .w0_index
            .get(g)
            .expect("generators belong to the enumerated group");
        simple_gens.push(ExtAffineWeylElement {
            translation: group.relative.coinv.group.zero(),
            finite: idx,
            tag,
        });
    }
    group.n_finite = simple_gens.len();
    // One affine generator per component: t_nu * s_theta.
    for c in 0..group.components.len() {
        let dir = group.theta[c];
        let nu_elt = group.relative.minimal_translation_element(dir);
        let refl = &group.relative.reflections_abs[dir];
        let idx = *group
            .w0_index
            .get(refl)
            .expect("reflections lie in the fixed subgroup");
        simple_gens.push(ExtAffineWeylElement {
            translation: nu_elt,
            finite: idx,
            tag,
        });
    }
    group.simple_gens = simple_gens;

    for k in 0..group.simple_gens.len() {
        let s = group.simple_gens[k].clone();
        assert_eq!(group.length(&s), 1, "simple generator {k} has length != 1");
        assert!(
            group.multiply(&s, &s) == group.identity(),
            "simple generator {k} is not an involution"
        );
    }

    // Omega generators: length-zero parts of translations by pi_1 lifts.
    let mut omega_gens = Vec::new();
    for &(pos, order) in &group.pi1_positions.clone() {
        let lift: Vec<i64> = (0..n).map(|i| pi1_snf.u_inv[(i, pos)]).collect();
        let t = group
            .translation(&group.relative.coinv.project(&lift))
            .expect("lift has ambient rank");
        let (_, tau) = group.omega_decompose(&t);
        assert_eq!(group.length(&tau), 0);
        if order > 0 {
            let mut p = group.identity();
            for _ in 0..order {
                p = group.multiply(&p, &tau);
            }
            assert!(p == group.identity(), "Omega generator order mismatch");
        }
        omega_gens.push(tau);
    }
    group.omega_gens = omega_gens;

    Ok(group)
}

impl ExtAffineWeylGroup {
    pub fn identity(&self) -> ExtAffineWeylElement {
        ExtAffineWeylElement {
            translation: self.relative.coinv.group.zero(),
            finite: self.identity_idx,
            tag: self.tag,
        }
    }

    /// Number of simple generators (finite ones first, then one affine node
    /// per irreducible component).
    pub fn num_simple(&self) -> usize {
        self.simple_gens.len()
    }

    pub fn num_finite_simple(&self) -> usize {
        self.n_finite
    }

    pub fn simple_reflection(&self, k: usize) -> ExtAffineWeylElement {
        self.simple_gens[k].clone()
    }

    pub fn omega_generators(&self) -> &[ExtAffineWeylElement] {
        &self.omega_gens
    }

    pub fn finite_order(&self) -> usize {
        self.w0.len()
    }

    /// The enumerated finite relative Weyl group, as ambient matrices.
    pub fn finite_matrices(&self) -> &[Mat] {
        &self.w0
    }

    fn check_tag(&self, x: &ExtAffineWeylElement) -> Result<()> {
        if x.tag != self.tag {
            return Err(Error::validation(
                "element belongs to a different ambient group",
            ));
        }
        Ok(())
    }

    /// The pure translation by a coinvariant lattice element.
    pub fn translation(&self, lambda: &FgElement) -> Result<ExtAffineWeylElement> {
        let g = &self.relative.coinv.group;
        if lambda.free.len() != g.free_rank || lambda.torsion.len() != g.torsion.len() {
            return Err(Error::validation("translation has wrong shape"));
        }
        Ok(ExtAffineWeylElement {
            translation: g.reduce(lambda),
            finite: self.identity_idx,
            tag: self.tag,
        })
    }

    /// Translation by the image of an ambient cocharacter.
    pub fn translation_of_cocharacter(&self, lambda: &[i64]) -> Result<ExtAffineWeylElement> {
        if lambda.len() != self.relative.ambient.rank {
            return Err(Error::validation("cocharacter length != ambient rank"));
        }
        self.translation(&self.relative.coinv.project(lambda))
    }

    pub fn multiply(
        &self,
        a: &ExtAffineWeylElement,
        b: &ExtAffineWeylElement,
    ) -> ExtAffineWeylElement {
        assert_eq!(a.tag, self.tag, "element from a different group");
        assert_eq!(b.tag, self.tag, "element from a different group");
        let g = &self.relative.coinv.group;
        let moved = self.relative.coinv.act(&self.w0[a.finite], &b.translation);
        let translation = g.add(&a.translation, &moved);
        let product = self.w0[a.finite].mul(&self.w0[b.finite]);
        let finite = self.w0_index[&product];
        ExtAffineWeylElement {
            translation,
            finite,
            tag: self.tag,
        }
    }

    pub fn inverse(&self, a: &ExtAffineWeylElement) -> ExtAffineWeylElement {
        assert_eq!(a.tag, self.tag, "element from a different group");
        let g = &self.relative.coinv.group;
        let w_inv = self.w0_inv[a.finite];
        let translation = g.neg(&self.relative.coinv.act(&self.w0[w_inv], &a.translation));
        ExtAffineWeylElement {
            translation,
            finite: w_inv,
            tag: self.tag,
        }
    }

    /// True when `w^{-1} a_dir` is a positive relative root.
    fn dir_stays_positive(&self, finite: usize, dir: usize) -> bool {
        let s = dot(&self.relative.positive_roots[dir], &self.w0_vreg[finite]);
        assert!(s != 0, "regular vector pairing vanished");
        s > 0
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, x: &ExtAffineWeylElement) -> i64 {
        assert_eq!(x.tag, self.tag, "element from a different group");
        let lam = &x.translation.free;
        let mut len = 0i64;
        for dir in 0..self.relative.positive_roots.len() {
            let p = dot(&self.relative.positive_roots[dir], lam);
            if self.dir_stays_positive(x.finite, dir) {
                len += p.abs();
            } else {
                len += (p - 1).abs();
            }
        }
        len
    }

    /// Whether `s_k x < x`.
    pub fn left_descent(&self, x: &ExtAffineWeylElement, k: usize) -> bool {
        assert_eq!(x.tag, self.tag, "element from a different group");
        if k < self.n_finite {
            let dir = self.relative.simple_indices[k];
            let p = dot(&self.relative.positive_roots[dir], &x.translation.free);
            p < 0 || (p == 0 && !self.dir_stays_positive(x.finite, dir))
        } else {
            let dir = self.theta[k - self.n_finite];
            let p = dot(&self.relative.positive_roots[dir], &x.translation.free);
            p > 1 || (p == 1 && self.dir_stays_positive(x.finite, dir))
        }
    }

    /// Whether `x s_k < x`.
    pub fn right_descent(&self, x: &ExtAffineWeylElement, k: usize) -> bool {
        self.left_descent(&self.inverse(x), k)
    }

    /// Lexicographically smallest reduced word of the affine part, together
    /// with the length-zero remainder tau: `x = s_{w_1} .. s_{w_m} tau`.
    pub fn reduced_word(&self, x: &ExtAffineWeylElement) -> (Vec<usize>, ExtAffineWeylElement) {
        assert_eq!(x.tag, self.tag, "element from a different group");
        let mut word = Vec::new();
        let mut cur = x.clone();
        'outer: loop {
            for k in 0..self.simple_gens.len() {
                if self.left_descent(&cur, k) {
                    word.push(k);
                    cur = self.multiply(&self.simple_gens[k], &cur);
                    continue 'outer;
                }
            }
            break;
        }
        assert_eq!(self.length(&cur), 0, "descent stripping missed length");
        assert_eq!(word.len() as i64, self.length(x), "word is not reduced");
        (word, cur)
    }

    /// Decomposition `x = w_aff * tau` with `w_aff` in the affine Weyl group
    /// and `tau` of length zero.
    pub fn omega_decompose(
        &self,
        x: &ExtAffineWeylElement,
    ) -> (ExtAffineWeylElement, ExtAffineWeylElement) {
        let (_, tau) = self.reduced_word(x);
        let w_aff = self.multiply(x, &self.inverse(&tau));
        (w_aff, tau)
    }

    /// The Kottwitz invariant: the class of the translation lattice point in
    /// pi_1, constant on Omega-cosets of the affine Weyl group.
    pub fn kappa(&self, x: &ExtAffineWeylElement) -> FgElement {
        assert_eq!(x.tag, self.tag, "element from a different group");
        let ambient = self.relative.coinv.section(&x.translation);
        let y = self.pi1_u.apply(&ambient);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for &(pos, order) in &self.pi1_positions {
            if order == 0 {
                free.push(y[pos]);
            } else {
                torsion.push(y[pos]);
            }
        }
        self.pi1.reduce(&FgElement { free, torsion })
    }

    /// Bruhat order. Elements in different Omega-cosets are incomparable.
    pub fn bruhat_leq(&self, a: &ExtAffineWeylElement, b: &ExtAffineWeylElement) -> Result<bool> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let (_, tau_a) = self.reduced_word(a);
        let (_, tau_b) = self.reduced_word(b);
        if tau_a != tau_b {
            return Ok(false);
        }
        let mut memo = HashMap::new();
        Ok(self.leq_inner(a, b, &mut memo))
    }

    fn leq_inner(
        &self,
        a: &ExtAffineWeylElement,
        b: &ExtAffineWeylElement,
        memo: &mut HashMap<(ExtAffineWeylElement, ExtAffineWeylElement), bool>,
    ) -> bool {
        if a == b {
            return true;
        }
        let la = self.length(a);
        let lb = self.length(b);
        if la >= lb {
            return false;
        }
        if let Some(&r) = memo.get(&(a.clone(), b.clone())) {
            return r;
        }
        let k = (0..self.simple_gens.len())
            .find(|&k| self.left_descent(b, k))
            .expect("positive length implies a descent");
        let sb = self.multiply(&self.simple_gens[k], b);
        let sa = self.multiply(&self.simple_gens[k], a);
        let r = if self.length(&sa) < la {
            self.leq_inner(&sa, &sb, memo)
        } else {
            self.leq_inner(a, &sb, memo)
        };
        memo.insert((a.clone(), b.clone()), r);
        r
    }

    /// All distinct products of subwords of `word` (in order), as elements.
    pub fn subword_closure(&self, word: &[usize]) -> Vec<ExtAffineWeylElement> {
        let mut set: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
        set.insert(self.identity());
        for &k in word {
            let s = &self.simple_gens[k];
            let extended: Vec<ExtAffineWeylElement> =
                set.iter().map(|x| self.multiply(x, s)).collect();
            set.extend(extended);
        }
        set.into_iter().collect()
    }

    /// All elements of length <= radius whose Omega part is a product of
    /// generator powers with free exponents bounded by `omega_bound`.
    pub fn ball(&self, radius: usize, omega_bound: i64) -> Result<Vec<ExtAffineWeylElement>> {
        // Affine part: BFS under left multiplication by the simple
        // generators.
        let mut aff: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
        aff.insert(self.identity());
        let mut queue: VecDeque<ExtAffineWeylElement> = VecDeque::new();
        queue.push_back(self.identity());
        while let Some(x) = queue.pop_front() {
            for s in &self.simple_gens {
                let y = self.multiply(s, &x);
                if self.length(&y) as usize <= radius && !aff.contains(&y) {
                    if aff.len() >= self.caps.elements {
                        return Err(Error::cap(format!(
                            "ball enumeration exceeds {}",
                            self.caps.elements
                        )));
                    }
                    aff.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        // Omega part: products of generator powers.
        let taus = self.omega_elements(omega_bound)?;
        let mut out: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
        for x in &aff {
            for t in &taus {
                if out.len() >= self.caps.elements {
                    return Err(Error::cap(format!(
                        "ball enumeration exceeds {}",
                        self.caps.elements
                    )));
                }
                out.insert(self.multiply(x, t));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The length-zero elements with bounded free exponents.
    pub fn omega_elements(&self, omega_bound: i64) -> Result<Vec<ExtAffineWeylElement>> {
        let mut taus: Vec<ExtAffineWeylElement> = vec![self.identity()];
        for (g, &(_, order)) in self.omega_gens.iter().zip(&self.pi1_positions) {
            let exps: Vec<i64> = if order == 0 {
                (-omega_bound..=omega_bound).collect()
            } else {
                (0..order).collect()
            };
            let mut next = Vec::new();
            for t in &taus {
                for &e in &exps {
                    let mut p = t.clone();
                    let factor = if e >= 0 { g.clone() } else { self.inverse(g) };
                    for _ in 0..e.abs() {
                        p = self.multiply(&p, &factor);
                    }
                    next.push(p);
                }
            }
            taus = next;
            if taus.len() > self.caps.elements {
                return Err(Error::cap("Omega enumeration exceeds cap".to_string()));
            }
        }
        let set: BTreeSet<ExtAffineWeylElement> = taus.iter().cloned().collect();
        assert_eq!(
            set.len(),
            taus.len(),
            "Omega generators are not independent"
        );
        Ok(taus)
    }

    /// The minimal-length representative of `W_J x W_K` for standard
    /// parabolic subsets J, K of simple generator indices.
    pub fn double_coset_min_rep(
        &self,
        left: &[usize],
        x: &ExtAffineWeylElement,
        right: &[usize],
    ) -> Result<ExtAffineWeylElement> {
        self.check_tag(x)?;
        for &k in left.iter().chain(right) {
            if k >= self.simple_gens.len() {
                return Err(Error::validation(format!("no simple generator {k}")));
            }
        }
        let mut cur = x.clone();
        loop {
            if let Some(&k) = left.iter().find(|&&k| self.left_descent(&cur, k)) {
                cur = self.multiply(&self.simple_gens[k], &cur);
                continue;
            }
            if let Some(&k) = right.iter().find(|&&k| self.right_descent(&cur, k)) {
                cur = self.multiply(&cur, &self.simple_gens[k]);
                continue;
            }
            return Ok(cur);
        }
    }

    /// Reduced word of the finite part over the finite simple generators.
    pub fn finite_word(&self, x: &ExtAffineWeylElement) -> Vec<usize> {
        assert_eq!(x.tag, self.tag, "element from a different group");
        let mut word = Vec::new();
        let mut w = x.finite;
        'outer: loop {
            for k in 0..self.n_finite {
                let dir = self.relative.simple_indices[k];
                if !self.dir_stays_positive(w, dir) {
                    word.push(k);
                    let prod = self.w0[self.simple_gens[k].finite].mul(&self.w0[w]);
                    w = self.w0_index[&prod];
                    continue 'outer;
                }
            }
            break;
        }
        assert_eq!(
            w, self.identity_idx,
            "finite part did not reduce to identity"
        );
        word
    }

    /// Rebuilds an element from a translation part and a word in the finite
    /// simple generators.
    pub fn element_from_parts(
        &self,
        translation: &FgElement,
        finite_word: &[usize],
    ) -> Result<ExtAffineWeylElement> {
        let mut x = self.translation(translation)?;
        for &k in finite_word {
            if k >= self.n_finite {
                return Err(Error::validation(format!("no finite simple generator {k}")));
            }
            x = self.multiply(&x, &self.simple_gens[k]);
        }
        Ok(x)
    }
}

/// Subword-property Bruhat oracle: `a <= b` iff the Omega parts agree and
/// the affine part of `a` is a subword product of a reduced word of `b`.
/// Exponential-ish but fine at small length; used to cross-check the
/// recursive implementation.
pub fn bruhat_leq_by_subwords(
    group: &ExtAffineWeylGroup,
    a: &ExtAffineWeylElement,
    b: &ExtAffineWeylElement,
) -> bool {
    let (word, tau_b) = group.reduced_word(b);
    let (_, tau_a) = group.reduced_word(a);
    if tau_a != tau_b {
        return false;
    }
    let closure = group.subword_closure(&word);
    let target = group.multiply(a, &group.inverse(&tau_a));
    closure.contains(&target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{
        build_root_datum, pinned_automorphism, pinned_identity, two_rho_pairing, AutKind, AutName,
        Family, GroupSpec,
    };

    fn split_group(family: Family, rank: usize) -> ExtAffineWeylGroup {
        let rd = build_root_datum(&GroupSpec::new(family, rank)).unwrap();
        let aut = pinned_identity(&rd);
        make_iwahori_weyl(&rd, &aut, Caps::default()).unwrap()
    }

    fn folded_group(
        family: Family,
        rank: usize,
        order: usize,
        kind: AutKind,
    ) -> ExtAffineWeylGroup {
        let rd = build_root_datum(&GroupSpec::new(family, rank)).unwrap();
        let aut = pinned_automorphism(&rd, order, &kind).unwrap();
        make_iwahori_weyl(&rd, &aut, Caps::default()).unwrap()
    }

    #[test]
    fn sl2_translation_lengths() {
        let g = split_group(Family::Sl, 2);
        // t_{alpha-vee} has length 2; t_{alpha-vee} s has length 1 (the
        // affine generator); t_{-alpha-vee} s has length 3.
        let t = g.translation_of_cocharacter(&[1]).unwrap();
        assert_eq!(g.length(&t), 2);
        let s = g.simple_reflection(0);
        assert_eq!(g.length(&g.multiply(&t, &s)), 1);
        let t_neg = g.translation_of_cocharacter(&[-1]).unwrap();
        assert_eq!(g.length(&g.multiply(&t_neg, &s)), 3);
        // The affine simple generator is exactly t_{alpha-vee} s.
        assert_eq!(g.num_simple(), 2);
        assert_eq!(g.simple_reflection(1), g.multiply(&t, &s));
    }

    #[test]
    fn translation_length_is_two_rho_pairing_split() {
        for (family, rank, mus) in [
            (
                Family::Gl,
                2,
                vec![vec![1, 0], vec![2, 0], vec![3, 1], vec![1, 1]],
            ),
            (
                Family::Gl,
                3,
                vec![vec![1, 0, 0], vec![1, 1, 0], vec![2, 1, 0], vec![2, 2, 1]],
            ),
            (
                Family::Gsp,
                4,
                vec![vec![1, 1, 1], vec![2, 1, 1], vec![1, 0, 0]],
            ),
            (Family::C, 2, vec![vec![1, 0], vec![1, 1], vec![2, 1]]),
            (Family::A, 2, vec![vec![1, 0], vec![1, 1], vec![2, 1]]),
        ] {
            let rd = build_root_datum(&GroupSpec::new(family, rank)).unwrap();
            let g = split_group(family, rank);
            for mu in mus {
                if !rd.is_dominant(&mu) {
                    continue;
                }
                let t = g.translation_of_cocharacter(&mu).unwrap();
                assert_eq!(
                    g.length(&t),
                    two_rho_pairing(&rd, &mu).unwrap(),
                    "{family:?} {mu:?}"
                );
            }
        }
    }

    #[test]
    fn ramified_su3_wall_lengths() {
        // Folded A_2: the coinvariant lattice is Z and the normalized root
        // pairs to 2 with its generator, so t_1 has length 2 and t_1 s has
        // length 1.
        let g = folded_group(Family::A, 2, 2, AutKind::Named(AutName::Flip));
        assert_eq!(g.relative.free_rank, 1);
        let e = FgElement {
            free: vec![1],
            torsion: vec![],
        };
        let t = g.translation(&e).unwrap();
        assert_eq!(g.length(&t), 2);
        let s = g.simple_reflection(0);
        assert_eq!(g.length(&g.multiply(&t, &s)), 1);
        assert_eq!(g.num_simple(), 2);
        // Infinite dihedral ball growth: 1 + 2L elements, trivial Omega.
        let ball = g.ball(6, 0).unwrap();
        assert_eq!(ball.len(), 13);
        assert!(g.pi1.is_trivial());
    }

    #[test]
    fn sl2_ball_is_infinite_dihedral() {
        let g = split_group(Family::Sl, 2);
        let ball = g.ball(6, 0).unwrap();
        assert_eq!(ball.len(), 13);
        for x in &ball {
            assert_eq!(g.length(x), g.length(&g.inverse(x)));
        }
    }

    #[test]
    fn length_one_elements_are_exactly_the_simple_reflections() {
        for g in [
            split_group(Family::Sl, 2),
            split_group(Family::Sl, 3),
            split_group(Family::C, 2),
            folded_group(Family::A, 3, 2, AutKind::Named(AutName::Flip)),
        ] {
            let ball = g.ball(1, 0).unwrap();
            let ones: Vec<_> = ball.iter().filter(|x| g.length(x) == 1).collect();
            assert_eq!(ones.len(), g.num_simple());
            for k in 0..g.num_simple() {
                assert!(ones.contains(&&g.simple_reflection(k)));
            }
        }
    }

    #[test]
    fn lengths_are_subadditive_and_parity_correct() {
        let g = split_group(Family::A, 2);
        let ball = g.ball(4, 0).unwrap();
        for x in ball.iter().take(20) {
            for y in ball.iter().take(20) {
                let p = g.multiply(x, y);
                let (lx, ly, lp) = (g.length(x), g.length(y), g.length(&p));
                assert!(lp <= lx + ly);
                assert!((lx + ly - lp) % 2 == 0);
            }
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        let g = split_group(Family::C, 2);
        let ball = g.ball(5, 1).unwrap();
        for x in &ball {
            let (word, tau) = g.reduced_word(x);
            let mut y = g.identity();
            for &k in &word {
                y = g.multiply(&y, &g.simple_reflection(k));
            }
            y = g.multiply(&y, &tau);
            assert_eq!(&y, x);
            assert_eq!(word.len() as i64, g.length(x));
            assert_eq!(g.length(&tau), 0);
        }
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for g in [
            split_group(Family::Sl, 2),
            split_group(Family::A, 2),
            split_group(Family::C, 2),
        ] {
            let ball = g.ball(6, 0).unwrap();
            for a in &ball {
                for b in &ball {
                    assert_eq!(
                        g.bruhat_leq(a, b).unwrap(),
                        bruhat_leq_by_subwords(&g, a, b),
                        "mismatch"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_separates_omega_cosets() {
        let g = split_group(Family::Gl, 2);
        let tau = g.omega_generators()[0].clone();
        let id = g.identity();
        assert!(!g.bruhat_leq(&id, &tau).unwrap());
        assert!(g.bruhat_leq(&tau, &tau).unwrap());
    }

    #[test]
    fn gl_omega_is_infinite_cyclic() {
        let g = split_group(Family::Gl, 3);
        assert_eq!(g.pi1.free_rank, 1);
        assert!(g.pi1.torsion.is_empty());
        let tau = g.omega_generators()[0].clone();
        let mut p = g.identity();
        for k in 1..=5 {
            p = g.multiply(&p, &tau);
            assert_eq!(g.length(&p), 0);
            assert!(p != g.identity(), "tau^{k} collapsed");
            let kappa = g.kappa(&p);
            assert_eq!(kappa.free.iter().map(|x| x.abs()).max(), Some(k));
        }
    }

    #[test]
    fn pgl2_omega_is_z_mod_2() {
        let g = split_group(Family::Pgl, 2);
        assert_eq!(g.pi1.free_rank, 0);
        assert_eq!(g.pi1.torsion, vec![2]);
        let tau = g.omega_generators()[0].clone();
        assert!(tau != g.identity());
        assert_eq!(g.multiply(&tau, &tau), g.identity());
        // tau = t_omega-vee s in the usual presentation: length zero but
        // nontrivial finite part.
        assert!(tau.finite != g.identity().finite);
    }

    #[test]
    fn sl_omega_is_trivial() {
        let g = split_group(Family::Sl, 3);
        assert!(g.pi1.is_trivial());
        assert!(g.omega_generators().is_empty());
    }

    #[test]
    fn folded_gl4_omega_is_z_mod_2() {
        let g = folded_group(Family::Gl, 4, 2, AutKind::Named(AutName::Flip));
        assert_eq!(g.pi1.free_rank, 0);
        assert_eq!(g.pi1.torsion, vec![2]);
        let tau = g.omega_generators()[0].clone();
        assert_eq!(g.multiply(&tau, &tau), g.identity());
        assert!(tau != g.identity());
    }

    #[test]
    fn gsp4_iwahori_weyl_shape() {
        let g = split_group(Family::Gsp, 4);
        assert_eq!(g.finite_order(), 8);
        assert_eq!(g.num_simple(), 3);
        assert_eq!(g.pi1.free_rank, 1);
        assert!(g.pi1.torsion.is_empty());
        // The Siegel translation has length 3 and its kappa class generates.
        let t = g.translation_of_cocharacter(&[1, 1, 1]).unwrap();
        assert_eq!(g.length(&t), 3);
        let kappa = g.kappa(&t);
        assert_eq!(kappa.free.iter().map(|x| x.abs()).max(), Some(1));
    }

    #[test]
    fn kappa_is_a_homomorphism_killing_w_aff() {
        let g = split_group(Family::Gl, 2);
        for k in 0..g.num_simple() {
            let s = g.simple_reflection(k);
            assert!(g.pi1.is_zero(&g.kappa(&s)), "kappa(s_{k}) != 0");
        }
        let ball = g.ball(3, 1).unwrap();
        for x in ball.iter().take(12) {
            for y in ball.iter().take(12) {
                let lhs = g.kappa(&g.multiply(x, y));
                let rhs = g.pi1.add(&g.kappa(x), &g.kappa(y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn omega_conjugation_permutes_simple_generators() {
        // tau s_i tau^{-1} is again a simple generator (Omega acts on the
        // extended diagram).
        for g in [split_group(Family::Gl, 2), split_group(Family::Pgl, 2)] {
            for tau in g.omega_generators() {
                for k in 0..g.num_simple() {
                    let conj =
                        g.multiply(&g.multiply(tau, &g.simple_reflection(k)), &g.inverse(tau));
                    assert_eq!(g.length(&conj), 1);
                    assert!((0..g.num_simple()).any(|j| g.simple_reflection(j) == conj));
                }
            }
        }
    }

    #[test]
    fn double_coset_min_rep_is_minimal() {
        let g = split_group(Family::A, 2);
        let ball = g.ball(4, 0).unwrap();
        let j = [0usize, 1];
        for x in &ball {
            let m = g.double_coset_min_rep(&j, x, &[]).unwrap();
            // Minimal in its left coset: no descent from J.
            for &k in &j {
                assert!(!g.left_descent(&m, k));
            }
            // Same coset.
            assert!(g.bruhat_leq(&m, x).is_ok());
        }
    }

    #[test]
    fn element_parts_round_trip() {
        let g = split_group(Family::Gsp, 4);
        let ball = g.ball(3, 1).unwrap();
        for x in &ball {
            let word = g.finite_word(x);
            let y = g.element_from_parts(&x.translation, &word).unwrap();
            assert_eq!(&y, x);
        }
    }

    #[test]
    fn mixed_group_elements_are_rejected() {
        let g1 = split_group(Family::Gl, 2);
        let g2 = split_group(Family::Gl, 3);
        let x = g2.identity();
        assert!(g1.bruhat_leq(&x, &x).is_err());
    }
}
