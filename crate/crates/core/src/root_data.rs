//! Based root data, pinned diagram automorphisms, and folding.
//!
//! A root datum is stored with cocharacters as column vectors in `Z^rank` and
//! characters (roots) as covectors. Root systems are generated by reflection
//! closure from the simple pairs, so presets only write down Cartan data.
//!
//! `fold` descends a datum along a pinned automorphism to the coinvariant
//! lattice and produces the relative root system together with the minimal
//! translation `nu` and the normalized covector `a_hat` per direction, chosen
//! so that the affine hyperplane family along the direction is exactly
//! `{ x : <a_hat, x> in Z }` and `<a_hat, nu> = 2`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois_lattice::{coinvariants, CoinvariantLattice, FgElement, LatticeWithAction};
use crate::intmat::{check_finite_order, kernel_basis, smith_normal_form, solve, Mat};

/// Hard cap on Weyl-group and orbit enumeration sizes.
pub const WEYL_CAP: usize = 50_000;
/// Hard cap on the ambient lattice rank.
pub const RANK_CAP: usize = 16;
const ROOT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "PGL")]
    Pgl,
    #[serde(rename = "GSp")]
    Gsp,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::Gl => "GL",
            Family::Sl => "SL",
            Family::Pgl => "PGL",
            Family::Gsp => "GSp",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "GL" => Ok(Family::Gl),
            "SL" => Ok(Family::Sl),
            "PGL" => Ok(Family::Pgl),
            "GSP" => Ok(Family::Gsp),
            _ => Err(Error::validation(format!("unknown family {s:?}"))),
        }
    }
}

/// Which pinned automorphism to attach to a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutKind {
    Named(AutName),
    /// Explicit permutation of the simple nodes (simply-connected types only).
    Perm(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutName {
    Identity,
    Flip,
    Triality,
}

impl std::str::FromStr for AutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identity" | "id" => Ok(AutKind::Named(AutName::Identity)),
            "flip" => Ok(AutKind::Named(AutName::Flip)),
            "triality" => Ok(AutKind::Named(AutName::Triality)),
            other => {
                if let Some(rest) = other.strip_prefix("perm:") {
                    let perm: std::result::Result<Vec<usize>, _> =
                        rest.split(',').map(|t| t.trim().parse::<usize>()).collect();
                    perm.map(AutKind::Perm)
                        .map_err(|e| Error::validation(format!("bad permutation: {e}")))
                } else {
                    Err(Error::validation(format!("unknown automorphism {s:?}")))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSpec {
    pub order: usize,
    pub kind: AutKind,
}

/// External group specifier. For matrix families (`GL`, `SL`, `PGL`, `GSp`)
/// `rank` is the matrix size n of GL_n / GSp_n (so GSp requires it even);
/// for the Cartan families A-D it is the Cartan rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<AutomorphismSpec>,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        GroupSpec {
            family,
            rank,
            automorphism: None,
        }
    }

    pub fn with_automorphism(mut self, order: usize, kind: AutKind) -> Self {
        self.automorphism = Some(AutomorphismSpec { order, kind });
        self
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Composes a covector with a lattice map: (c . m)(x) = c(m x).
fn compose_covector(c: &[i64], m: &Mat) -> Vec<i64> {
    assert_eq!(c.len(), m.rows);
    (0..m.cols)
        .map(|j| (0..m.rows).map(|k| c[k] * m[(k, j)]).sum())
        .collect()
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

/// A based root datum: lattice `Z^rank`, roots as covectors, coroots as
/// vectors, both closed under all root reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub rank: usize,
    /// All roots (covectors), sorted; parallel to `coroots`.
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Indices of the simple roots, in diagram order.
    pub simple: Vec<usize>,
    /// Indices of the positive roots.
    pub positive: Vec<usize>,
    /// Sum of the positive roots (a covector).
    pub two_rho: Vec<i64>,
    /// Sum of the positive coroots (a vector).
    pub sum_pos_coroots: Vec<i64>,
    /// A regular dominant vector: <alpha_i, v_star> > 0 for all simples.
    pub v_star: Vec<i64>,
    pub family: Family,
    pub label: String,
}

fn reflect_root(root: &[i64], pair: i64, simple_root: &[i64]) -> Vec<i64> {
    root.iter()
        .zip(simple_root)
        .map(|(&a, &b)| a - pair * b)
        .collect()
}

fn strictly_dominant_vector(simple_roots: &[Vec<i64>], rank: usize) -> Result<Vec<i64>> {
    if simple_roots.is_empty() {
        return Ok(vec![0; rank]);
    }
    let s = Mat::from_rows(simple_roots);
    let snf = smith_normal_form(&s);
    let m = s.rows;
    for i in 0..m {
        if snf.diag.get(i).copied().unwrap_or(0) == 0 {
            return Err(Error::validation("simple roots are linearly dependent"));
        }
    }
    // Solve S v = k*(1,..,1) with the smallest k clearing all denominators.
    let u1 = snf.u.apply(&vec![1i64; m]);
    let mut k = 1i64;
    for i in 0..m {
        let g = num_integer::gcd(snf.diag[i], u1[i]).max(1);
        k = lcm(k, snf.diag[i] / g);
    }
    let mut y = vec![0i64; s.cols];
    for i in 0..m {
        y[i] = k * u1[i] / snf.diag[i];
    }
    Ok(snf.v.apply(&y))
}

impl RootDatum {
    /// Builds a datum from the simple (root, coroot) pairs by reflection
    /// closure, then validates the axioms.
    pub fn from_simple_pairs(
        rank: usize,
        simple_pairs: &[(Vec<i64>, Vec<i64>)],
        family: Family,
        label: impl Into<String>,
    ) -> Result<RootDatum> {
        if rank == 0 || rank > RANK_CAP {
            return Err(Error::cap(format!("rank {rank} outside 1..={RANK_CAP}")));
        }
        for (r, c) in simple_pairs {
            if r.len() != rank || c.len() != rank {
                return Err(Error::validation("root/coroot length != rank"));
            }
            if dot(r, c) != 2 {
                return Err(Error::validation(format!("simple pair <{r:?},{c:?}> != 2")));
            }
        }
        // Reflection closure over the simple reflections.
        let mut set: BTreeSet<(Vec<i64>, Vec<i64>)> = simple_pairs.iter().cloned().collect();
        if set.len() != simple_pairs.len() {
            return Err(Error::validation("duplicate simple pair"));
        }
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = set.iter().cloned().collect();
        while let Some((r, c)) = queue.pop_front() {
            for (sr, sc) in simple_pairs {
                let nr = reflect_root(&r, dot(&r, sc), sr);
                let nc = reflect_root(&c, dot(sr, &c), sc);
                let pair = (nr, nc);
                if set.insert(pair.clone()) {
                    if set.len() > ROOT_CLOSURE_CAP {
                        return Err(Error::validation(
                            "root closure does not terminate: not a finite root system",
                        ));
                    }
                    queue.push_back(pair);
                }
            }
        }
        let pairs: Vec<(Vec<i64>, Vec<i64>)> = set.into_iter().collect();
        let roots: Vec<Vec<i64>> = pairs.iter().map(|(r, _)| r.clone()).collect();
        let coroots: Vec<Vec<i64>> = pairs.iter().map(|(_, c)| c.clone()).collect();

        let root_index: BTreeMap<&Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        if root_index.len() != roots.len() {
            return Err(Error::validation("distinct coroots attached to one root"));
        }
        let coroot_set: BTreeSet<&Vec<i64>> = coroots.iter().collect();
        if coroot_set.len() != coroots.len() {
            return Err(Error::validation("distinct roots attached to one coroot"));
        }

        let simple: Vec<usize> = simple_pairs
            .iter()
            .map(|(r, _)| *root_index.get(r).expect("simple root survives closure"))
            .collect();

        let datum_label = label.into();
        let simple_roots: Vec<Vec<i64>> = simple_pairs.iter().map(|(r, _)| r.clone()).collect();
        let v_star = strictly_dominant_vector(&simple_roots, rank)?;

        let mut positive = Vec::new();
        let mut two_rho = vec![0i64; rank];
        let mut sum_pos_coroots = vec![0i64; rank];
        for (i, r) in roots.iter().enumerate() {
            let p = dot(r, &v_star);
            if p == 0 && !roots.is_empty() {
                return Err(Error::validation("root orthogonal to regular vector"));
            }
            if p > 0 {
                positive.push(i);
                for k in 0..rank {
                    two_rho[k] += r[k];
                    sum_pos_coroots[k] += coroots[i][k];
                }
            }
        }

        let rd = RootDatum {
            rank,
            roots,
            coroots,
            simple,
            positive,
            two_rho,
            sum_pos_coroots,
            v_star,
            family,
            label: datum_label,
        };
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<()> {
        for (r, c) in self.roots.iter().zip(&self.coroots) {
            if dot(r, c) != 2 {
                return Err(Error::validation("pairing <root, coroot> != 2"));
            }
        }
        // Reduced: each line through the origin carries exactly one +/- pair.
        let mut lines: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for r in &self.roots {
            let mut p = primitive(r);
            if p.iter().find(|&&x| x != 0).map_or(false, |&x| x < 0) {
                p = p.iter().map(|&x| -x).collect();
            }
            *lines.entry(p).or_insert(0) += 1;
        }
        if lines.values().any(|&c| c != 2) {
            return Err(Error::validation("root system is not reduced"));
        }
        // Cartan integrality on the simples.
        for &i in &self.simple {
            for &j in &self.simple {
                if i == j {
                    continue;
                }
                let a = dot(&self.roots[i], &self.coroots[j]);
                let b = dot(&self.roots[j], &self.coroots[i]);
                if !(-3..=0).contains(&a) || (a == 0) != (b == 0) {
                    return Err(Error::validation(format!(
                        "invalid Cartan entry {a} between simple roots"
                    )));
                }
            }
        }
        // Every root reflection permutes the coroot set.
        let coroot_set: BTreeSet<&Vec<i64>> = self.coroots.iter().collect();
        for i in 0..self.roots.len() {
            let s = self.reflection_mat(i);
            for c in &self.coroots {
                let img = s.apply(c);
                if !coroot_set.contains(&img) {
                    return Err(Error::validation("reflection does not permute the coroots"));
                }
            }
        }
        Ok(())
    }

    /// The reflection in root `idx` acting on the cocharacter lattice:
    /// `v -> v - <root, v> coroot`.
    pub fn reflection_mat(&self, idx: usize) -> Mat {
        let n = self.rank;
        let mut m = Mat::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= self.coroots[idx][r] * self.roots[idx][c];
            }
        }
        m
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        dot(&self.roots[idx], &self.v_star) > 0
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.simple
            .iter()
            .all(|&i| dot(&self.roots[i], lambda) >= 0)
    }

    /// True when every root pairs with `mu` in {-1, 0, 1}.
    pub fn is_minuscule(&self, mu: &[i64]) -> bool {
        self.roots.iter().all(|r| dot(r, mu).abs() <= 1)
    }

    /// The Weyl orbit of a cocharacter.
    pub fn weyl_orbit(&self, lambda: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        if lambda.len() != self.rank {
            return Err(Error::validation("cocharacter length != rank"));
        }
        let gens: Vec<Mat> = self
            .simple
            .iter()
            .map(|&i| self.reflection_mat(i))
            .collect();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(lambda.to_vec());
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        queue.push_back(lambda.to_vec());
        while let Some(v) = queue.pop_front() {
            for g in &gens {
                let w = g.apply(&v);
                if seen.insert(w.clone()) {
                    if seen.len() > cap {
                        return Err(Error::cap(format!("Weyl orbit exceeds {cap}")));
                    }
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// All elements of the finite Weyl group as matrices on the cocharacter
    /// lattice, in sorted order.
    pub fn weyl_group(&self, cap: usize) -> Result<Vec<Mat>> {
        let gens: Vec<Mat> = self
            .simple
            .iter()
            .map(|&i| self.reflection_mat(i))
            .collect();
        enumerate_group(&gens, self.rank, cap)
    }
}

/// BFS closure of a finite matrix group from its generators.
pub fn enumerate_group(gens: &[Mat], rank: usize, cap: usize) -> Result<Vec<Mat>> {
    let id = Mat::identity(rank);
    let mut seen: BTreeSet<Mat> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue: VecDeque<Mat> = VecDeque::new();
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let x = g.mul(&w);
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return Err(Error::cap(format!("group enumeration exceeds {cap}")));
                }
                queue.push_back(x);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 0..n.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match family {
        Family::B => a[n - 2][n - 1] = -2,
        Family::C => a[n - 1][n - 2] = -2,
        Family::D => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        _ => {}
    }
    a
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v
}

/// Builds the root datum for a group specifier. The automorphism part of the
/// specifier is ignored here; see [`pinned_automorphism`] and [`realize`].
pub fn build_root_datum(spec: &GroupSpec) -> Result<RootDatum> {
    let n = spec.rank;
    let label = spec.label();
    match spec.family {
        Family::A | Family::B | Family::C | Family::D => {
            let min = match spec.family {
                Family::A => 1,
                Family::B | Family::C => 2,
                _ => 3,
            };
            if n < min {
                return Err(Error::validation(format!(
                    "family {} needs rank >= {min}",
                    spec.family
                )));
            }
            let cartan = cartan_matrix(spec.family, n);
            let pairs: Vec<(Vec<i64>, Vec<i64>)> =
                (0..n).map(|i| (cartan[i].clone(), unit(n, i))).collect();
            RootDatum::from_simple_pairs(n, &pairs, spec.family, label)
        }
        Family::Gl => {
            if n < 1 {
                return Err(Error::validation("GL needs n >= 1"));
            }
            let mut pairs = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut r = vec![0i64; n];
                r[i] = 1;
                r[i + 1] = -1;
                pairs.push((r.clone(), r));
            }
            RootDatum::from_simple_pairs(n, &pairs, Family::Gl, label)
        }
        Family::Sl => {
            if n < 2 {
                return Err(Error::validation("SL needs n >= 2"));
            }
            let m = n - 1;
            let cartan = cartan_matrix(Family::A, m);
            let pairs: Vec<(Vec<i64>, Vec<i64>)> =
                (0..m).map(|i| (cartan[i].clone(), unit(m, i))).collect();
            RootDatum::from_simple_pairs(m, &pairs, Family::Sl, label)
        }
        Family::Pgl => {
            if n < 2 {
                return Err(Error::validation("PGL needs n >= 2"));
            }
            let m = n - 1;
            let cartan = cartan_matrix(Family::A, m);
            let pairs: Vec<(Vec<i64>, Vec<i64>)> = (0..m)
                .map(|i| {
                    let coroot: Vec<i64> = (0..m).map(|k| cartan[k][i]).collect();
                    (unit(m, i), coroot)
                })
                .collect();
            RootDatum::from_simple_pairs(m, &pairs, Family::Pgl, label)
        }
        Family::Gsp => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::validation("GSp needs even matrix size >= 2"));
            }
            let g = n / 2;
            let rank = g + 1;
            // Coordinates (a_1, .., a_g; m) on the cocharacter lattice; the
            // similitude character is the last coordinate.
            let mut pairs = Vec::new();
            for i in 0..g.saturating_sub(1) {
                let mut r = vec![0i64; rank];
                r[i] = 1;
                r[i + 1] = -1;
                pairs.push((r.clone(), r));
            }
            let mut long_root = vec![0i64; rank];
            long_root[g - 1] = 2;
            long_root[g] = -1;
            let long_coroot = unit(rank, g - 1);
            pairs.push((long_root, long_coroot));
            RootDatum::from_simple_pairs(rank, &pairs, Family::Gsp, label)
        }
    }
}

/// A validated automorphism of a based root datum: a finite-order lattice
/// map stabilizing roots, coroots and the simple set. `order` is a declared
/// exponent (`matrix^order = 1`), not necessarily the minimal one -- the
/// declared value is the order of the acting cyclic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinnedAutomorphism {
    pub matrix: Mat,
    pub order: usize,
    /// Induced permutation of the simple nodes.
    pub perm: Vec<usize>,
}

fn reversal_mat(n: usize, sign: i64) -> Mat {
    let mut m = Mat::zero(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = sign;
    }
    m
}

fn perm_mat(perm: &[usize]) -> Mat {
    let n = perm.len();
    let mut m = Mat::zero(n, n);
    for (i, &p) in perm.iter().enumerate() {
        m[(p, i)] = 1;
    }
    m
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    p.len() == n && {
        let mut seen = vec![false; n];
        p.iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
    }
}

/// Builds and validates a pinned automorphism of the given kind.
pub fn pinned_automorphism(
    rd: &RootDatum,
    order: usize,
    kind: &AutKind,
) -> Result<PinnedAutomorphism> {
    let m = rd.simple.len();
    let matrix = match kind {
        AutKind::Named(AutName::Identity) => Mat::identity(rd.rank),
        AutKind::Named(AutName::Flip) => match rd.family {
            Family::A | Family::Sl => {
                let perm: Vec<usize> = (0..m).rev().collect();
                perm_mat(&perm)
            }
            Family::Gl => reversal_mat(rd.rank, -1),
            Family::Pgl => reversal_mat(rd.rank, 1),
            Family::D => {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.swap(m - 1, m - 2);
                perm_mat(&perm)
            }
            _ => {
                return Err(Error::validation(format!(
                    "family {} has no diagram flip",
                    rd.family
                )))
            }
        },
        AutKind::Named(AutName::Triality) => {
            if rd.family != Family::D || rd.rank != 4 {
                return Err(Error::validation("triality needs type D rank 4"));
            }
            perm_mat(&[2, 1, 3, 0])
        }
        AutKind::Perm(p) => {
            if !matches!(
                rd.family,
                Family::A | Family::B | Family::C | Family::D | Family::Sl
            ) {
                return Err(Error::validation(
                    "explicit node permutations are supported on simply-connected types only",
                ));
            }
            if !is_permutation(p, m) {
                return Err(Error::validation("not a permutation of the simple nodes"));
            }
            perm_mat(p)
        }
    };
    pinned_from_matrix(rd, matrix, order)
}

/// Validates an explicit lattice automorphism against the datum.
pub fn pinned_from_matrix(rd: &RootDatum, matrix: Mat, order: usize) -> Result<PinnedAutomorphism> {
    if matrix.rows != rd.rank || matrix.cols != rd.rank {
        return Err(Error::validation("automorphism matrix has wrong shape"));
    }
    check_finite_order(&matrix, order)?;
    // The coroot permutation sigma, and the compatibility on the root side:
    // gamma(coroot_r) = coroot_{sigma(r)} must force root_{sigma(r)} . gamma = root_r.
    let coroot_index: BTreeMap<&Vec<i64>, usize> =
        rd.coroots.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut sigma = vec![0usize; rd.roots.len()];
    for (r, c) in rd.coroots.iter().enumerate() {
        let img = matrix.apply(c);
        let Some(&s) = coroot_index.get(&img) else {
            return Err(Error::validation(
                "automorphism does not stabilize the coroots",
            ));
        };
        sigma[r] = s;
        if compose_covector(&rd.roots[s], &matrix) != rd.roots[r] {
            return Err(Error::validation(
                "automorphism is incompatible with the root/coroot bijection",
            ));
        }
    }
    // Pinning: the simple set is stabilized (hence so are the positives).
    let simple_pos: BTreeMap<usize, usize> =
        rd.simple.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut perm = vec![0usize; rd.simple.len()];
    for (k, &i) in rd.simple.iter().enumerate() {
        let Some(&k2) = simple_pos.get(&sigma[i]) else {
            return Err(Error::validation(
                "automorphism does not permute the simple roots",
            ));
        };
        perm[k] = k2;
    }
    Ok(PinnedAutomorphism {
        matrix,
        order,
        perm,
    })
}

/// The identity automorphism (inertia acting trivially).
pub fn pinned_identity(rd: &RootDatum) -> PinnedAutomorphism {
    PinnedAutomorphism {
        matrix: Mat::identity(rd.rank),
        order: 1,
        perm: (0..rd.simple.len()).collect(),
    }
}

/// Builds the datum together with its automorphism from a full specifier.
pub fn realize(spec: &GroupSpec) -> Result<(RootDatum, PinnedAutomorphism)> {
    let rd = build_root_datum(spec)?;
    let aut = match &spec.automorphism {
        None => pinned_identity(&rd),
        Some(a) => pinned_automorphism(&rd, a.order, &a.kind)?,
    };
    Ok((rd, aut))
}

/// `<2 rho, mu>` for dominant `mu`; rejects non-dominant input.
pub fn two_rho_pairing(rd: &RootDatum, mu: &[i64]) -> Result<i64> {
    if mu.len() != rd.rank {
        return Err(Error::validation("cocharacter length != rank"));
    }
    if !rd.is_dominant(mu) {
        return Err(Error::validation(
            "cocharacter is not dominant; apply dominant_representative first",
        ));
    }
    Ok(dot(&rd.two_rho, mu))
}

/// The dominant Weyl-chamber representative of a cocharacter.
pub fn dominant_representative(rd: &RootDatum, lambda: &[i64]) -> Vec<i64> {
    assert_eq!(lambda.len(), rd.rank, "cocharacter length != rank");
    let mut v = lambda.to_vec();
    loop {
        // <2rho, v> strictly increases at each step, so this terminates.
        let mut moved = false;
        for &i in &rd.simple {
            let p = dot(&rd.roots[i], &v);
            if p < 0 {
                for k in 0..rd.rank {
                    v[k] -= p * rd.coroots[i][k];
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return v;
        }
    }
}

/// The relative (folded) root datum on the coinvariant lattice.
///
/// Directions are indexed by the positive relative roots. For direction `k`:
/// `positive_roots[k]` is the normalized covector `a_hat` on the free
/// coinvariant coordinates, `nu[k]` the minimal translation with
/// `<a_hat, nu> = 2`, and `reflections_abs[k]` the unique element of the
/// fixed Weyl subgroup inducing the reflection along the direction.
#[derive(Clone, Debug)]
pub struct RelativeRootDatum {
    pub ambient: RootDatum,
    pub automorphism: PinnedAutomorphism,
    pub coinv: CoinvariantLattice,
    pub free_rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub nu: Vec<Vec<i64>>,
    /// `positive_roots[k] = echelonnage[k] * primitive(restriction line k)`.
    pub echelonnage: Vec<i64>,
    pub reflections_abs: Vec<Mat>,
    pub w0_generators_abs: Vec<Mat>,
    /// For each generator, the direction whose reflection it induces.
    pub simple_indices: Vec<usize>,
    pub v_reg: Vec<i64>,
    /// Projection to free coinvariant coordinates (free_rank x rank).
    pub proj: Mat,
    /// Integral section of `proj` (rank x free_rank).
    pub section: Mat,
    /// Free parts of the projected coroots (free_rank x #coroots).
    pub coroot_free: Mat,
    /// Torsion parts of the projected coroots (#torsion x #coroots).
    pub coroot_tors: Mat,
}

impl RelativeRootDatum {
    /// Induced action of an ambient Weyl element on free coordinates.
    pub fn proj_of(&self, w_abs: &Mat) -> Mat {
        self.proj.mul(w_abs).mul(&self.section)
    }

    /// All relative roots (positives and their negatives).
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive_roots.clone();
        out.extend(
            self.positive_roots
                .iter()
                .map(|r| r.iter().map(|&x| -x).collect()),
        );
        out
    }

    /// The relative Weyl group as matrices on free coordinates.
    pub fn relative_weyl(&self, cap: usize) -> Result<Vec<Mat>> {
        let gens: Vec<Mat> = self
            .w0_generators_abs
            .iter()
            .map(|g| self.proj_of(g))
            .collect();
        enumerate_group(&gens, self.free_rank, cap)
    }

    /// Sum of the positive relative roots.
    pub fn two_rho_free(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.free_rank];
        for r in &self.positive_roots {
            for k in 0..self.free_rank {
                s[k] += r[k];
            }
        }
        s
    }

    pub fn is_dominant_free(&self, y: &[i64]) -> bool {
        self.simple_indices
            .iter()
            .all(|&k| dot(&self.positive_roots[k], y) >= 0)
    }

    /// Dominant representative of a free-coordinate vector under the
    /// relative Weyl group.
    pub fn dominant_free(&self, y: &[i64]) -> Vec<i64> {
        assert_eq!(y.len(), self.free_rank);
        let refl: Vec<Mat> = self
            .simple_indices
            .iter()
            .map(|&k| self.proj_of(&self.reflections_abs[k]))
            .collect();
        let mut v = y.to_vec();
        let mut steps = 0usize;
        loop {
            let mut moved = false;
            for (j, &k) in self.simple_indices.iter().enumerate() {
                if dot(&self.positive_roots[k], &v) < 0 {
                    v = refl[j].apply(&v);
                    moved = true;
                    break;
                }
            }
            if !moved {
                return v;
            }
            steps += 1;
            assert!(steps <= 1_000_000, "dominantization did not terminate");
        }
    }

    /// Whether a free-coordinate vector pairs within {-1,0,1} with every
    /// relative root.
    pub fn is_minuscule_free(&self, y: &[i64]) -> bool {
        self.positive_roots.iter().all(|r| dot(r, y).abs() <= 1)
    }

    /// The minimal translation along direction `dir` as a full coinvariant
    /// element: its free part is `nu[dir]`, it lies in the image of the
    /// coroot lattice, and the reflection negates it.
    pub fn minimal_translation_element(&self, dir: usize) -> FgElement {
        let tors = &self.coinv.group.torsion;
        let refl = &self.reflections_abs[dir];
        let mut t = vec![0i64; tors.len()];
        loop {
            let cand = FgElement {
                free: self.nu[dir].clone(),
                torsion: t.clone(),
            };
            if self.in_coroot_image(&cand) {
                let img = self.coinv.act(refl, &cand);
                let neg = self.coinv.group.neg(&cand);
                if img == neg {
                    return cand;
                }
            }
            // Advance the mixed-radix torsion counter.
            let mut i = 0;
            loop {
                if i == tors.len() {
                    panic!("no admissible torsion correction for direction {dir}");
                }
                t[i] += 1;
                if t[i] < tors[i] {
                    break;
                }
                t[i] = 0;
                i += 1;
            }
        }
    }

    /// Membership of a coinvariant element in the image of the coroot
    /// lattice.
    pub fn in_coroot_image(&self, e: &FgElement) -> bool {
        let e = self.coinv.group.reduce(e);
        let k = self.coroot_free.cols;
        let tn = self.coinv.group.torsion.len();
        if k == 0 {
            return e.free.iter().all(|&x| x == 0) && e.torsion.iter().all(|&x| x == 0);
        }
        // Stack [coroot_free 0; coroot_tors diag(d)] and solve against
        // (free, torsion).
        let mut m = Mat::zero(self.free_rank + tn, k + tn);
        for i in 0..self.free_rank {
            for j in 0..k {
                m[(i, j)] = self.coroot_free[(i, j)];
            }
        }
        for i in 0..tn {
            for j in 0..k {
                m[(self.free_rank + i, j)] = self.coroot_tors[(i, j)];
            }
            m[(self.free_rank + i, k + i)] = self.coinv.group.torsion[i];
        }
        let mut rhs = e.free.clone();
        rhs.extend_from_slice(&e.torsion);
        solve(&m, &rhs).is_some()
    }
}

/// Folds a root datum along a pinned automorphism.
pub fn fold(rd: &RootDatum, aut: &PinnedAutomorphism) -> Result<RelativeRootDatum> {
    // Re-validate the automorphism against this datum.
    let aut = pinned_from_matrix(rd, aut.matrix.clone(), aut.order)?;
    let x = LatticeWithAction::new(aut.matrix.clone(), aut.order)?;
    let coinv = coinvariants(&x);
    let f = coinv.group.free_rank;
    let n = rd.rank;

    // Projection/section matrices for the free coordinates.
    let proj_cols: Vec<Vec<i64>> = (0..n).map(|i| coinv.project(&unit(n, i)).free).collect();
    let proj = if n == 0 {
        Mat::zero(f, 0)
    } else {
        Mat::from_cols(&proj_cols)
    };
    let sect_cols: Vec<Vec<i64>> = (0..f)
        .map(|k| coinv.section(&coinv.from_free(unit(f, k))))
        .collect();
    let section = if f == 0 {
        Mat::zero(n, 0)
    } else {
        Mat::from_cols(&sect_cols)
    };

    let v_reg = proj.apply(&rd.sum_pos_coroots);

    // Folded Weyl generators, one per automorphism orbit of simple nodes.
    let m = rd.simple.len();
    let mut seen = vec![false; m];
    let mut gens_abs: Vec<Mat> = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut j = aut.perm[start];
        while j != start {
            seen[j] = true;
            orbit.push(j);
            j = aut.perm[j];
        }
        orbit.sort_unstable();
        let pairwise_orthogonal = orbit.iter().all(|&a| {
            orbit
                .iter()
                .all(|&b| a == b || dot(&rd.roots[rd.simple[a]], &rd.coroots[rd.simple[b]]) == 0)
        });
        let gen = if pairwise_orthogonal {
            let mut g = Mat::identity(n);
            for &a in &orbit {
                g = g.mul(&rd.reflection_mat(rd.simple[a]));
            }
            g
        } else if orbit.len() == 2
            && dot(
                &rd.roots[rd.simple[orbit[0]]],
                &rd.coroots[rd.simple[orbit[1]]],
            ) == -1
        {
            let s0 = rd.reflection_mat(rd.simple[orbit[0]]);
            let s1 = rd.reflection_mat(rd.simple[orbit[1]]);
            s0.mul(&s1).mul(&s0)
        } else {
            return Err(Error::validation(
                "unsupported simple-node orbit under the automorphism",
            ));
        };
        gens_abs.push(gen);
    }

    // The fixed Weyl subgroup generated by the folded generators.
    let w0_abs = enumerate_group(&gens_abs, n, WEYL_CAP)?;

    // Restriction directions: gamma-orbit sums of positive roots, descended
    // to free coordinates and deduped by line.
    let mut powers = vec![Mat::identity(n)];
    for _ in 1..aut.order {
        powers.push(aut.matrix.mul(powers.last().unwrap()));
    }
    let mut lines: BTreeSet<Vec<i64>> = BTreeSet::new();
    for &b in &rd.positive {
        let mut r_sum = vec![0i64; n];
        for p in &powers {
            let comp = compose_covector(&rd.roots[b], p);
            for k in 0..n {
                r_sum[k] += comp[k];
            }
        }
        let restriction = compose_covector(&r_sum, &section);
        assert!(
            restriction.iter().any(|&x| x != 0),
            "restriction of a root vanishes on the free coinvariants"
        );
        let mut p = primitive(&restriction);
        let orient = dot(&p, &v_reg);
        assert!(orient != 0, "restriction direction is not regular");
        if orient < 0 {
            p = p.iter().map(|&x| -x).collect();
        }
        lines.insert(p);
    }

    // Projected coroots, both free and torsion parts.
    let coroot_elems: Vec<FgElement> = rd.coroots.iter().map(|c| coinv.project(c)).collect();
    let coroot_free = if coroot_elems.is_empty() {
        Mat::zero(f, 0)
    } else {
        Mat::from_cols(
            &coroot_elems
                .iter()
                .map(|e| e.free.clone())
                .collect::<Vec<_>>(),
        )
    };
    let tn = coinv.group.torsion.len();
    let coroot_tors = if coroot_elems.is_empty() {
        Mat::zero(tn, 0)
    } else {
        Mat::from_cols(
            &coroot_elems
                .iter()
                .map(|e| e.torsion.clone())
                .collect::<Vec<_>>(),
        )
    };
    let coroot_snf = smith_normal_form(&coroot_free);

    let id_f = Mat::identity(f);
    let mut positive_roots = Vec::new();
    let mut nus = Vec::new();
    let mut echelonnage = Vec::new();
    let mut reflections_abs = Vec::new();
    for prim in &lines {
        // The unique element of the fixed Weyl subgroup reflecting this line:
        // it fixes ker(prim) pointwise and is not the identity.
        let ker = kernel_basis(&Mat::from_rows(&[prim.clone()]));
        let mut found: Option<(Mat, Mat)> = None;
        for w in &w0_abs {
            let wp = proj.mul(w).mul(&section);
            if wp == id_f {
                continue;
            }
            if ker.iter().all(|k| wp.apply(k) == *k) {
                found = Some((w.clone(), wp));
                break;
            }
        }
        let Some((w_abs, wp)) = found else {
            return Err(Error::validation(
                "no reflection along a restriction direction: automorphism is not quasi-split",
            ));
        };
        assert!(
            wp.mul(&wp) == id_f,
            "direction stabilizer is not an involution"
        );
        // The -1 eigenvector: any nonzero column of (wp - 1), made primitive.
        let diff = wp.sub(&id_f);
        let col = (0..f)
            .map(|j| (0..f).map(|i| diff[(i, j)]).collect::<Vec<i64>>())
            .find(|c| c.iter().any(|&x| x != 0))
            .expect("reflection differs from the identity");
        let mut d = primitive(&col);
        assert_eq!(wp.apply(&d), d.iter().map(|&x| -x).collect::<Vec<i64>>());
        if dot(prim, &d) < 0 {
            d = d.iter().map(|&x| -x).collect();
        }
        // Minimal positive multiple of d inside the projected coroot lattice.
        let ud = coroot_snf.u.apply(&d);
        let mut t_min = 1i64;
        for i in 0..f {
            let di = coroot_snf.diag.get(i).copied().unwrap_or(0);
            if di == 0 {
                assert_eq!(ud[i], 0, "direction leaves the projected coroot lattice");
            } else {
                let g = num_integer::gcd(di, ud[i]).max(1);
                t_min = lcm(t_min, di / g);
            }
        }
        let nu: Vec<i64> = d.iter().map(|&x| t_min * x).collect();
        let m_pair = dot(prim, &nu);
        assert!(
            m_pair == 1 || m_pair == 2,
            "echelonnage normalization out of range: {m_pair}"
        );
        let c = 2 / m_pair;
        positive_roots.push(prim.iter().map(|&x| c * x).collect());
        nus.push(nu);
        echelonnage.push(c);
        reflections_abs.push(w_abs);
    }

    // Match each folded generator to its direction.
    let mut simple_indices = Vec::new();
    for g in &gens_abs {
        let gp = proj.mul(g).mul(&section);
        let mut found = None;
        for (k, w) in reflections_abs.iter().enumerate() {
            if proj.mul(w).mul(&section) == gp {
                assert!(w == g, "fixed Weyl subgroup does not act faithfully");
                found = Some(k);
                break;
            }
        }
        let Some(k) = found else {
            return Err(Error::validation(
                "folded generator does not reflect any restriction direction",
            ));
        };
        simple_indices.push(k);
    }
    {
        let mut uniq = simple_indices.clone();
        uniq.sort_unstable();
        uniq.dedup();
        assert_eq!(
            uniq.len(),
            simple_indices.len(),
            "generators share a direction"
        );
    }

    Ok(RelativeRootDatum {
        ambient: rd.clone(),
        automorphism: aut,
        coinv,
        free_rank: f,
        positive_roots,
        nu: nus,
        echelonnage,
        reflections_abs,
        w0_generators_abs: gens_abs,
        simple_indices,
        v_reg,
        proj,
        section,
        coroot_free,
        coroot_tors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: usize) -> RootDatum {
        build_root_datum(&GroupSpec::new(Family::Gl, n)).unwrap()
    }

    fn spec_folded(family: Family, rank: usize, order: usize, kind: AutKind) -> RelativeRootDatum {
        let rd = build_root_datum(&GroupSpec::new(family, rank)).unwrap();
        let aut = pinned_automorphism(&rd, order, &kind).unwrap();
        fold(&rd, &aut).unwrap()
    }

    #[test]
    fn gl_root_counts() {
        for n in 1..=5 {
            assert_eq!(gl(n).roots.len(), n * (n - 1));
        }
    }

    #[test]
    fn gl2_two_rho() {
        let rd = gl(2);
        assert_eq!(rd.two_rho, vec![1, -1]);
        assert_eq!(two_rho_pairing(&rd, &[1, 0]).unwrap(), 1);
    }

    #[test]
    fn gl3_two_rho() {
        let rd = gl(3);
        assert_eq!(rd.two_rho, vec![2, 0, -2]);
        assert_eq!(two_rho_pairing(&rd, &[1, 0, 0]).unwrap(), 2);
        assert_eq!(two_rho_pairing(&rd, &[1, 1, 0]).unwrap(), 2);
    }

    #[test]
    fn two_rho_rejects_non_dominant() {
        let rd = gl(3);
        assert!(two_rho_pairing(&rd, &[0, 1, 0]).is_err());
    }

    #[test]
    fn dominant_representative_sorts_gl() {
        let rd = gl(4);
        assert_eq!(
            dominant_representative(&rd, &[0, 2, -1, 1]),
            vec![2, 1, 0, -1]
        );
        assert!(rd.is_dominant(&[2, 1, 0, -1]));
    }

    #[test]
    fn gsp4_datum() {
        let rd = build_root_datum(&GroupSpec::new(Family::Gsp, 4)).unwrap();
        assert_eq!(rd.rank, 3);
        assert_eq!(rd.roots.len(), 8);
        assert_eq!(rd.two_rho, vec![4, 2, -3]);
        // The Siegel cocharacter.
        assert!(rd.is_dominant(&[1, 1, 1]));
        assert!(rd.is_minuscule(&[1, 1, 1]));
        assert_eq!(two_rho_pairing(&rd, &[1, 1, 1]).unwrap(), 3);
        assert_eq!(rd.weyl_group(WEYL_CAP).unwrap().len(), 8);
        assert_eq!(rd.weyl_orbit(&[1, 1, 1], WEYL_CAP).unwrap().len(), 4);
    }

    #[test]
    fn weyl_group_sizes() {
        let sizes = [
            (GroupSpec::new(Family::Gl, 3), 6),
            (GroupSpec::new(Family::A, 3), 24),
            (GroupSpec::new(Family::B, 2), 8),
            (GroupSpec::new(Family::C, 3), 48),
            (GroupSpec::new(Family::D, 4), 192),
            (GroupSpec::new(Family::Pgl, 3), 6),
        ];
        for (spec, size) in sizes {
            let rd = build_root_datum(&spec).unwrap();
            assert_eq!(
                rd.weyl_group(WEYL_CAP).unwrap().len(),
                size,
                "{}",
                spec.label()
            );
        }
    }

    #[test]
    fn root_counts_bcd() {
        for (family, n, count) in [
            (Family::B, 2, 8),
            (Family::B, 3, 18),
            (Family::C, 3, 18),
            (Family::D, 4, 24),
        ] {
            let rd = build_root_datum(&GroupSpec::new(family, n)).unwrap();
            assert_eq!(rd.roots.len(), count);
        }
    }

    #[test]
    fn pgl2_datum() {
        let rd = build_root_datum(&GroupSpec::new(Family::Pgl, 2)).unwrap();
        assert_eq!(rd.roots.len(), 2);
        assert_eq!(rd.coroots, vec![vec![-2], vec![2]]);
    }

    #[test]
    fn rejects_bad_families() {
        assert!(build_root_datum(&GroupSpec::new(Family::B, 1)).is_err());
        assert!(build_root_datum(&GroupSpec::new(Family::D, 2)).is_err());
        assert!(build_root_datum(&GroupSpec::new(Family::Gsp, 3)).is_err());
        assert!(build_root_datum(&GroupSpec::new(Family::Gl, 17)).is_err());
    }

    #[test]
    fn flip_automorphisms_validate() {
        for (spec, order) in [
            (GroupSpec::new(Family::A, 3), 2),
            (GroupSpec::new(Family::Gl, 4), 2),
            (GroupSpec::new(Family::Pgl, 3), 2),
            (GroupSpec::new(Family::D, 4), 2),
        ] {
            let rd = build_root_datum(&spec).unwrap();
            let aut = pinned_automorphism(&rd, order, &AutKind::Named(AutName::Flip)).unwrap();
            assert_eq!(aut.order, order, "{}", spec.label());
        }
        let rd = build_root_datum(&GroupSpec::new(Family::Gsp, 4)).unwrap();
        assert!(pinned_automorphism(&rd, 2, &AutKind::Named(AutName::Flip)).is_err());
    }

    #[test]
    fn triality_validates_on_d4_only() {
        let d4 = build_root_datum(&GroupSpec::new(Family::D, 4)).unwrap();
        let aut = pinned_automorphism(&d4, 3, &AutKind::Named(AutName::Triality)).unwrap();
        assert_eq!(aut.perm, vec![2, 1, 3, 0]);
        let d5 = build_root_datum(&GroupSpec::new(Family::D, 5)).unwrap();
        assert!(pinned_automorphism(&d5, 3, &AutKind::Named(AutName::Triality)).is_err());
    }

    #[test]
    fn declared_order_must_annihilate() {
        let rd = build_root_datum(&GroupSpec::new(Family::A, 3)).unwrap();
        assert!(pinned_automorphism(&rd, 3, &AutKind::Named(AutName::Flip)).is_err());
        // A non-minimal declared order is allowed.
        assert!(pinned_automorphism(&rd, 4, &AutKind::Named(AutName::Flip)).is_ok());
    }

    fn assert_split_fold_matches(spec: GroupSpec) {
        let rd = build_root_datum(&spec).unwrap();
        let rel = fold(&rd, &pinned_identity(&rd)).unwrap();
        assert_eq!(rel.free_rank, rd.rank);
        let mut rel_pos: Vec<Vec<i64>> = rel.positive_roots.clone();
        rel_pos.sort();
        let mut abs_pos: Vec<Vec<i64>> = rd.positive.iter().map(|&i| rd.roots[i].clone()).collect();
        abs_pos.sort();
        assert_eq!(rel_pos, abs_pos, "{}", spec.label());
        // nu recovers the coroots.
        for (k, a) in rel.positive_roots.iter().enumerate() {
            assert_eq!(dot(a, &rel.nu[k]), 2);
            let idx = rd.roots.iter().position(|r| r == a).unwrap();
            assert_eq!(rel.nu[k], rd.coroots[idx], "{}", spec.label());
        }
    }

    #[test]
    fn split_fold_reproduces_absolute_datum() {
        for spec in [
            GroupSpec::new(Family::Gl, 2),
            GroupSpec::new(Family::Gl, 3),
            GroupSpec::new(Family::Gsp, 4),
            GroupSpec::new(Family::Sl, 3),
            GroupSpec::new(Family::Pgl, 2),
            GroupSpec::new(Family::C, 2),
        ] {
            assert_split_fold_matches(spec);
        }
    }

    fn relative_cartan_pairs(rel: &RelativeRootDatum) -> Vec<(i64, i64)> {
        let s = &rel.simple_indices;
        let mut pairs = Vec::new();
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                let a = dot(&rel.positive_roots[s[i]], &rel.nu[s[j]]);
                let b = dot(&rel.positive_roots[s[j]], &rel.nu[s[i]]);
                pairs.push((a.min(b), a.max(b)));
            }
        }
        pairs.sort();
        pairs
    }

    #[test]
    fn folded_a2_is_rank_one_with_doubled_normalization() {
        let rel = spec_folded(Family::A, 2, 2, AutKind::Named(AutName::Flip));
        assert_eq!(rel.free_rank, 1);
        assert_eq!(rel.positive_roots.len(), 1);
        assert_eq!(rel.echelonnage, vec![2]);
        assert_eq!(dot(&rel.positive_roots[0], &rel.nu[0]), 2);
        // The minimal translation has pairing 2 against the normalized root,
        // so translation by the coweight generator has odd length parts.
        assert_eq!(rel.positive_roots[0].iter().map(|x| x.abs()).max(), Some(2));
    }

    #[test]
    fn folded_a3_gives_type_c2() {
        let rel = spec_folded(Family::A, 3, 2, AutKind::Named(AutName::Flip));
        assert_eq!(rel.free_rank, 2);
        assert_eq!(rel.positive_roots.len(), 4);
        assert_eq!(rel.w0_generators_abs.len(), 2);
        assert_eq!(relative_cartan_pairs(&rel), vec![(-2, -1)]);
        let w = rel.relative_weyl(WEYL_CAP).unwrap();
        assert_eq!(w.len(), 8);
        let mut ech = rel.echelonnage.clone();
        ech.sort_unstable();
        assert_eq!(ech, vec![1, 1, 2, 2]);
    }

    #[test]
    fn folded_d4_by_triality_gives_type_g2() {
        let rel = spec_folded(Family::D, 4, 3, AutKind::Named(AutName::Triality));
        assert_eq!(rel.free_rank, 2);
        assert_eq!(rel.positive_roots.len(), 6);
        assert_eq!(relative_cartan_pairs(&rel), vec![(-3, -1)]);
        assert_eq!(rel.relative_weyl(WEYL_CAP).unwrap().len(), 12);
    }

    #[test]
    fn folded_d4_by_flip_gives_type_b3() {
        let rel = spec_folded(Family::D, 4, 2, AutKind::Named(AutName::Flip));
        assert_eq!(rel.free_rank, 3);
        assert_eq!(rel.positive_roots.len(), 9);
        assert_eq!(rel.relative_weyl(WEYL_CAP).unwrap().len(), 48);
    }

    #[test]
    fn folded_gl4_matches_coinvariant_rank() {
        let rel = spec_folded(Family::Gl, 4, 2, AutKind::Named(AutName::Flip));
        assert_eq!(rel.free_rank, 2);
        assert_eq!(rel.positive_roots.len(), 4);
        for (k, a) in rel.positive_roots.iter().enumerate() {
            assert_eq!(dot(a, &rel.nu[k]), 2);
        }
    }

    #[test]
    fn declared_order_four_flip_folds_like_order_two() {
        let rd = build_root_datum(&GroupSpec::new(Family::D, 4)).unwrap();
        let a2 = pinned_automorphism(&rd, 2, &AutKind::Named(AutName::Flip)).unwrap();
        let a4 = pinned_automorphism(&rd, 4, &AutKind::Named(AutName::Flip)).unwrap();
        let r2 = fold(&rd, &a2).unwrap();
        let r4 = fold(&rd, &a4).unwrap();
        assert_eq!(r2.positive_roots, r4.positive_roots);
        assert_eq!(r2.nu, r4.nu);
    }

    #[test]
    fn minimal_translation_elements_are_in_coroot_image() {
        for rel in [
            spec_folded(Family::A, 3, 2, AutKind::Named(AutName::Flip)),
            spec_folded(Family::Gl, 4, 2, AutKind::Named(AutName::Flip)),
            spec_folded(Family::Gsp, 4, 1, AutKind::Named(AutName::Identity)),
            spec_folded(Family::Pgl, 2, 1, AutKind::Named(AutName::Identity)),
        ] {
            for dir in 0..rel.positive_roots.len() {
                let e = rel.minimal_translation_element(dir);
                assert_eq!(rel.coinv.free_part(&e), rel.nu[dir]);
                assert!(rel.in_coroot_image(&e));
            }
        }
    }

    #[test]
    fn fixed_weyl_subgroup_matches_folded_generators() {
        // The subgroup generated by the folded generators equals the
        // centralizer of the automorphism inside the absolute Weyl group.
        let rd = build_root_datum(&GroupSpec::new(Family::A, 3)).unwrap();
        let aut = pinned_automorphism(&rd, 2, &AutKind::Named(AutName::Flip)).unwrap();
        let rel = fold(&rd, &aut).unwrap();
        let all = rd.weyl_group(WEYL_CAP).unwrap();
        let fixed: Vec<&Mat> = all
            .iter()
            .filter(|w| aut.matrix.mul(w) == w.mul(&aut.matrix))
            .collect();
        let folded = enumerate_group(&rel.w0_generators_abs, rd.rank, WEYL_CAP).unwrap();
        assert_eq!(fixed.len(), folded.len());
    }

    #[test]
    fn group_spec_round_trips_through_json() {
        let spec = GroupSpec::new(Family::Gsp, 4);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"type":"GSp","rank":4}"#);
        let back: GroupSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        let with_aut: GroupSpec = serde_json::from_str(
            r#"{"type":"A","rank":3,"automorphism":{"order":2,"kind":"flip"}}"#,
        )
        .unwrap();
        assert_eq!(
            with_aut.automorphism,
            Some(AutomorphismSpec {
                order: 2,
                kind: AutKind::Named(AutName::Flip)
            })
        );
    }
}
