//! Admissible sets, their parahoric collapses, and q-point polynomials.
//!
//! Adm(mu) is the Bruhat-downward closure of the translations t_lambda over
//! the finite Weyl orbit Lambda of the projected cocharacter. Downward
//! closure is computed by subword enumeration from one reduced word per
//! extreme element, which is correct by the subword property and cheap at
//! the lengths that occur here.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{ExtAffineWeylElement, ExtAffineWeylGroup};
use crate::error::{Error, Result};
use crate::galois_lattice::FgElement;

/// A polynomial in q with integer coefficients; `coeffs[k]` multiplies q^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoly {
    pub coeffs: Vec<i64>,
}

impl QPoly {
    pub fn from_counts(counts: &[i64]) -> Self {
        let mut coeffs = counts.to_vec();
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        QPoly { coeffs }
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "q")?,
                1 => write!(f, "{c}q")?,
                _ if c == 1 => write!(f, "q^{k}")?,
                _ => write!(f, "{c}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A standard parahoric subgroup, given by the simple generator indices it
/// contains (finite nodes first, then one affine node per component, in the
/// owning group's indexing).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParahoricSubgroup {
    pub generators: Vec<usize>,
}

impl ParahoricSubgroup {
    pub fn new(mut generators: Vec<usize>) -> Self {
        generators.sort_unstable();
        generators.dedup();
        ParahoricSubgroup { generators }
    }

    /// The Iwahori: no generators.
    pub fn iwahori() -> Self {
        ParahoricSubgroup {
            generators: Vec::new(),
        }
    }

    /// The special maximal parahoric containing all finite simple
    /// reflections.
    pub fn special_maximal(group: &ExtAffineWeylGroup) -> Self {
        ParahoricSubgroup {
            generators: (0..group.num_finite_simple()).collect(),
        }
    }
}

/// The admissible set of a cocharacter: extreme translations and everything
/// Bruhat-below them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub mu: Vec<i64>,
    pub lambda_orbit: Vec<FgElement>,
    pub elements: Vec<ExtAffineWeylElement>,
    pub lengths: Vec<i64>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &ExtAffineWeylElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

/// The finite Weyl orbit of the projected cocharacter in the coinvariant
/// lattice. Independent of which conjugate of `mu` is supplied.
pub fn lambda_orbit(group: &ExtAffineWeylGroup, mu: &[i64]) -> Result<Vec<FgElement>> {
    if mu.len() != group.relative.ambient.rank {
        return Err(Error::validation("cocharacter length != ambient rank"));
    }
    let bar = group.relative.coinv.project(mu);
    let mut orbit: BTreeSet<FgElement> = BTreeSet::new();
    for w in group.finite_matrices() {
        orbit.insert(group.relative.coinv.act(w, &bar));
    }
    Ok(orbit.into_iter().collect())
}

fn validate_parahoric(group: &ExtAffineWeylGroup, p: &ParahoricSubgroup) -> Result<()> {
    for &k in &p.generators {
        if k >= group.num_simple() {
            return Err(Error::validation(format!("no simple generator {k}")));
        }
    }
    // W_P is finite iff P omits at least one node of each irreducible
    // component of the extended diagram.
    let m = group.num_finite_simple();
    let pset: BTreeSet<usize> = p.generators.iter().copied().collect();
    for (c, comp) in group.components.iter().enumerate() {
        let mut nodes: Vec<usize> = vec![m + c];
        for k in 0..m {
            if comp.contains(&group.relative.simple_indices[k]) {
                nodes.push(k);
            }
        }
        if nodes.iter().all(|k| pset.contains(k)) {
            return Err(Error::validation(
                "parahoric contains a full affine component; its Weyl group is infinite",
            ));
        }
    }
    Ok(())
}

/// All elements of the finite group W_P.
fn parahoric_weyl(
    group: &ExtAffineWeylGroup,
    p: &ParahoricSubgroup,
) -> Result<Vec<ExtAffineWeylElement>> {
    validate_parahoric(group, p)?;
    let mut set: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
    set.insert(group.identity());
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for &k in &p.generators {
            let y = group.multiply(&group.simple_reflection(k), &x);
            if !set.contains(&y) {
                if set.len() >= group.caps.weyl {
                    return Err(Error::cap(format!(
                        "parahoric Weyl group exceeds {}",
                        group.caps.weyl
                    )));
                }
                set.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Builds Adm(mu).
pub fn adm(group: &ExtAffineWeylGroup, mu: &[i64]) -> Result<AdmissibleSet> {
    let orbit = lambda_orbit(group, mu)?;
    let mut set: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
    let mut extreme_len: Option<i64> = None;
    for lam in &orbit {
        let t = group.translation(lam)?;
        let lt = group.length(&t);
        match extreme_len {
            None => extreme_len = Some(lt),
            Some(l) => assert_eq!(l, lt, "extreme translations have unequal lengths"),
        }
        let (word, tau) = group.reduced_word(&t);
        for x in group.subword_closure(&word) {
            set.insert(group.multiply(&x, &tau));
        }
        if set.len() > group.caps.elements {
            return Err(Error::cap(format!(
                "admissible set exceeds {}",
                group.caps.elements
            )));
        }
    }
    let elements: Vec<ExtAffineWeylElement> = set.into_iter().collect();
    let lengths: Vec<i64> = elements.iter().map(|x| group.length(x)).collect();
    // The extreme elements are exactly the translations over the orbit: no
    // other element may reach the extreme length.
    if let Some(l) = extreme_len {
        let top: BTreeSet<&ExtAffineWeylElement> = elements
            .iter()
            .zip(&lengths)
            .filter(|&(_, &lx)| lx == l)
            .map(|(x, _)| x)
            .collect();
        assert_eq!(
            top.len(),
            orbit.len(),
            "extreme elements are not the orbit translations"
        );
        for lam in &orbit {
            assert!(top.contains(&group.translation(lam)?));
        }
    }
    Ok(AdmissibleSet {
        mu: mu.to_vec(),
        lambda_orbit: orbit,
        elements,
        lengths,
    })
}

/// Minimal double-coset representatives W_P \ Adm(mu) / W_P.
pub fn adm_parahoric(
    group: &ExtAffineWeylGroup,
    mu: &[i64],
    p: &ParahoricSubgroup,
) -> Result<Vec<ExtAffineWeylElement>> {
    validate_parahoric(group, p)?;
    let a = adm(group, mu)?;
    let mut out: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
    for w in &a.elements {
        out.insert(group.double_coset_min_rep(&p.generators, w, &p.generators)?);
    }
    Ok(out.into_iter().collect())
}

fn strip_right_descents(
    group: &ExtAffineWeylGroup,
    p: &ParahoricSubgroup,
    x: &ExtAffineWeylElement,
) -> ExtAffineWeylElement {
    let mut cur = x.clone();
    loop {
        match p.generators.iter().find(|&&k| group.right_descent(&cur, k)) {
            Some(&k) => cur = group.multiply(&cur, &group.simple_reflection(k)),
            None => return cur,
        }
    }
}

fn has_right_descent_in(
    group: &ExtAffineWeylGroup,
    p: &ParahoricSubgroup,
    x: &ExtAffineWeylElement,
) -> bool {
    p.generators.iter().any(|&k| group.right_descent(x, k))
}

/// q-point polynomial of the admissible union in the partial affine flag
/// variety of P: cells are indexed by the minimal-length representatives x
/// of the cosets x W_P lying below the maximal element of some
/// W_P t_lambda W_P, each contributing q^{l(x)}.
pub fn point_count_poly(
    group: &ExtAffineWeylGroup,
    mu: &[i64],
    p: &ParahoricSubgroup,
) -> Result<QPoly> {
    let wp = parahoric_weyl(group, p)?;
    let orbit = lambda_orbit(group, mu)?;
    let mut reps: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
    for lam in &orbit {
        let t = group.translation(lam)?;
        // Unique maximal element of W_P t W_P.
        let mut best: Option<ExtAffineWeylElement> = None;
        let mut best_len = -1i64;
        let mut best_count = 0usize;
        for u in &wp {
            let ut = group.multiply(u, &t);
            for v in &wp {
                let y = group.multiply(&ut, v);
                let ly = group.length(&y);
                if ly > best_len {
                    best_len = ly;
                    best = Some(y);
                    best_count = 1;
                } else if ly == best_len && best.as_ref() != Some(&y) {
                    best_count += 1;
                }
            }
        }
        let y = best.expect("nonempty double coset");
        assert_eq!(best_count, 1, "double coset maximum is not unique");
        let (word, tau) = group.reduced_word(&y);
        for x in group.subword_closure(&word) {
            let z = group.multiply(&x, &tau);
            if !has_right_descent_in(group, p, &z) {
                reps.insert(z);
            }
        }
        if reps.len() > group.caps.elements {
            return Err(Error::cap(format!(
                "cell enumeration exceeds {}",
                group.caps.elements
            )));
        }
    }
    let mut counts = Vec::new();
    for z in &reps {
        let l = group.length(z) as usize;
        if counts.len() <= l {
            counts.resize(l + 1, 0);
        }
        counts[l] += 1;
    }
    Ok(QPoly::from_counts(&counts))
}

/// Both candidate cell-counting formulas side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountReport {
    /// Minimal coset representatives below the double-coset maxima.
    pub primary: QPoly,
    /// Minimal representatives of the cosets meeting W_P Adm(mu).
    pub alternative: QPoly,
    pub agree: bool,
}

/// Computes the point-count polynomial by the operational formula and by
/// the coset-saturation alternative, flagging any mismatch.
pub fn point_count_report(
    group: &ExtAffineWeylGroup,
    mu: &[i64],
    p: &ParahoricSubgroup,
) -> Result<PointCountReport> {
    let primary = point_count_poly(group, mu, p)?;
    let wp = parahoric_weyl(group, p)?;
    let a = adm(group, mu)?;
    let mut reps: BTreeSet<ExtAffineWeylElement> = BTreeSet::new();
    for w in &a.elements {
        for u in &wp {
            let z = strip_right_descents(group, p, &group.multiply(u, w));
            reps.insert(z);
        }
    }
    let mut counts = Vec::new();
    for z in &reps {
        let l = group.length(z) as usize;
        if counts.len() <= l {
            counts.resize(l + 1, 0);
        }
        counts[l] += 1;
    }
    let alternative = QPoly::from_counts(&counts);
    let agree = primary == alternative;
    Ok(PointCountReport {
        primary,
        alternative,
        agree,
    })
}
