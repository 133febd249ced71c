//! Command-line front end for the `localmodel` library.
//!
//! Results are JSON lines on standard output, one object per line; run
//! metadata goes to standard error only, so identical invocations produce
//! byte-identical payloads. All numbers are exact (integers or integer
//! coefficient lists). Exit codes: 0 on success, 1 when a library module
//! rejects the input (the message carries the module's diagnostic), 2 on
//! usage errors.

use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr as _;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use localmodel::admissible::{adm, adm_parahoric, point_count_poly, ParahoricSubgroup};
use localmodel::affine_weyl::{make_iwahori_weyl, Caps, ExtAffineWeylElement, ExtAffineWeylGroup};
use localmodel::classical_catalog::{
    catalog, classify_form, Algebra, CatalogEntry, FormKind, FormSpec, Subcase,
};
use localmodel::galois_lattice::{
    coinvariants, cyclic_h1, cyclic_h2, kottwitz_pi1, FgAbelianGroup, FgElement, LatticeWithAction,
};
use localmodel::hecke::{a_mu_minuscule, inertia_invariant_dim, z_mu_support, HeckeAlgebra};
use localmodel::lattice_chain::{
    compare_with_admissible, enumerate_gl_points, enumerate_gsp_points, ChainShape,
};
use localmodel::root_data::{
    realize, AutKind, AutName, AutomorphismSpec, Family, GroupSpec, PinnedAutomorphism, RootDatum,
    WEYL_CAP,
};
use localmodel::Mat;

// ---------------------------------------------------------------------------
// Command tree.

#[derive(Parser)]
#[command(
    name = "localmodel",
    version,
    about = "Exact invariants of Iwahori-Weyl groups, admissible sets, and lattice-chain models"
)]
struct Cli {
    /// Worker threads for enumeration subcommands (0 = automatic)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the JSON-lines payload to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Resolve a group and report its folded shape, pi_1, and Omega
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Cohomology of a finite-order lattice action
    Cohomology {
        #[command(subcommand)]
        cmd: CohomologyCmd,
    },
    /// Iwahori-Weyl group: lengths, Bruhat order, metric balls
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// mu-admissible sets and their parahoric images
    Adm {
        #[command(subcommand)]
        cmd: AdmCmd,
    },
    /// Lattice-chain models over finite fields
    Chain {
        #[command(subcommand)]
        cmd: ChainCmd,
    },
    /// Hecke algebra: Bernstein central elements and minuscule numerics
    Hecke {
        #[command(subcommand)]
        cmd: HeckeCmd,
    },
    /// The classification table of classical forms
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Print one JSON object describing the resolved group
    Show {
        #[command(flatten)]
        group: GroupOpts,
    },
}

#[derive(Subcommand)]
enum CohomologyCmd {
    /// First cohomology of the cyclic action
    H1 {
        #[command(flatten)]
        action: ActionOpts,
    },
    /// Second (= Tate zeroth) cohomology of the cyclic action
    H2 {
        #[command(flatten)]
        action: ActionOpts,
    },
    /// Coinvariant group X / (gamma - 1) X
    Coinv {
        #[command(flatten)]
        action: ActionOpts,
    },
    /// Inertia coinvariants of the fundamental group
    Pi1 {
        #[command(flatten)]
        group: GroupOpts,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Length and lexicographically minimal reduced word of one element
    Length {
        #[command(flatten)]
        group: GroupOpts,
        /// Element: segments "t:<ints>" and "w:<indices>" joined by ";",
        /// multiplied left to right; the empty string is the identity
        #[arg(long)]
        element: String,
    },
    /// Bruhat order comparison a <= b
    Bruhat {
        #[command(flatten)]
        group: GroupOpts,
        /// Left-hand element, same grammar as weyl length --element
        #[arg(long)]
        a: String,
        /// Right-hand element
        #[arg(long)]
        b: String,
    },
    /// All elements of length <= radius, one JSON line each
    Ball {
        #[command(flatten)]
        group: GroupOpts,
        /// Length radius of the ball
        #[arg(long)]
        radius: usize,
        /// Free Omega coordinates run over [-bound, bound]; torsion
        /// coordinates are always enumerated completely
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        omega_bound: i64,
    },
}

#[derive(Subcommand)]
enum AdmCmd {
    /// Enumerate Adm(mu) at Iwahori level, one JSON line per element
    Enumerate {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
    },
    /// Cardinality of Adm(mu)
    Count {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
    },
    /// Minimal double-coset representatives at a parahoric level
    Parahoric {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
        #[command(flatten)]
        parahoric: ParahoricOpt,
    },
    /// Cell-count polynomial of the mu-admissible locus
    Points {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
        #[command(flatten)]
        parahoric: ParahoricOpt,
        /// Evaluate the polynomial at these prime powers (repeatable)
        #[arg(long)]
        q: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Count special-fiber points by direct enumeration, one line per q
    Count {
        #[command(flatten)]
        shape: ShapeOpts,
        /// Field sizes to enumerate (repeatable); runs in parallel
        #[arg(long, required = true)]
        q: Vec<usize>,
    },
    /// Compare the enumeration against the admissible-set polynomial
    Compare {
        #[command(flatten)]
        shape: ShapeOpts,
        /// Field size to enumerate
        #[arg(long)]
        q: usize,
    },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Bernstein central element z_mu in the T-basis, one line per term
    Zmu {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
        /// Parameter exponents, one per affine simple generator
        /// (default: all 1)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<i64>>,
        /// Also verify centrality by conjugating through the generators
        #[arg(long)]
        check_central: bool,
    },
    /// Sign and weight pairing attached to a minuscule cocharacter
    Amu {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
    },
    /// Inertia-invariant dimension of the minuscule weight orbit
    VmuInv {
        #[command(flatten)]
        group: GroupOpts,
        #[command(flatten)]
        mu: MuOpt,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Print the table rows, one JSON line each
    List,
    /// Classify one form specification against the table
    Classify {
        /// Full specification as JSON, e.g.
        /// {"algebra":"ramified","kind":"hermitian","subcase":"quasi-split","n":7}
        #[arg(long, conflicts_with_all = ["algebra", "kind", "subcase", "n"])]
        spec: Option<String>,
        /// matrix | unramified | ramified | quaternion | division:S/D
        #[arg(long, value_parser = parse_algebra)]
        algebra: Option<Algebra>,
        /// alternating | symmetric | hermitian | quaternion-hermitian |
        /// quaternion-anti-hermitian | none
        #[arg(long, value_parser = parse_form_kind)]
        kind: Option<FormKind>,
        /// split | quasi-split | non-quasi-split | single | case-a |
        /// case-b:<twist> | case-c | case-d
        #[arg(long, value_parser = parse_subcase)]
        subcase: Option<Subcase>,
        /// Dimension of the form (rank over the division algebra)
        #[arg(long)]
        n: Option<i64>,
    },
}

// ---------------------------------------------------------------------------
// Shared flag groups.

#[derive(Args, Clone)]
struct GroupOpts {
    /// Family: A, B, C, D, GL, SL, PGL, GSp (case-insensitive)
    #[arg(long, value_parser = parse_family)]
    group: Family,
    /// Matrix size n for GL/SL/PGL/GSp, Cartan rank for A-D
    #[arg(long)]
    rank: usize,
    /// Inertia automorphism: identity | flip | triality | perm:2,1,0,3
    #[arg(long, default_value = "identity", value_parser = parse_autkind)]
    automorphism: AutKind,
    /// Order of the automorphism (default: its natural order)
    #[arg(long)]
    aut_order: Option<usize>,
    /// Cap on the finite Weyl group enumeration
    #[arg(long, default_value_t = WEYL_CAP)]
    max_weyl: usize,
    /// Cap on element enumerations (balls, admissible sets)
    #[arg(long, default_value_t = Caps::default().elements)]
    max_elements: usize,
}

/// Either an explicit integer matrix with its cyclic order, or a group
/// whose pinned automorphism acts on the cocharacter lattice.
#[derive(Args, Clone)]
struct ActionOpts {
    /// Family (with --rank): act by the group's pinned automorphism
    #[arg(long, value_parser = parse_family, conflicts_with = "matrix")]
    group: Option<Family>,
    /// Matrix size / Cartan rank, as in group show
    #[arg(long)]
    rank: Option<usize>,
    /// Automorphism to pin (with --group)
    #[arg(long, default_value = "identity", value_parser = parse_autkind)]
    automorphism: AutKind,
    /// Cyclic order of the action (default: the natural order)
    #[arg(long)]
    order: Option<usize>,
    /// Explicit action matrix, rows separated by ";": "0,1;1,0"
    #[arg(long, value_parser = parse_mat, allow_hyphen_values = true)]
    matrix: Option<Mat>,
}

#[derive(Args, Clone)]
struct MuOpt {
    /// Cocharacter in ambient coordinates, e.g. 1,1,0
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    mu: Vec<i64>,
}

#[derive(Args, Clone)]
struct ParahoricOpt {
    /// "iwahori", "special", or a generator node list like "0,2"
    #[arg(long, default_value = "iwahori")]
    parahoric: String,
}

#[derive(Args, Clone)]
struct ShapeOpts {
    /// gl or gsp (case-insensitive)
    #[arg(long, value_parser = parse_chain_group)]
    group: ChainGroup,
    /// Ambient space dimension n
    #[arg(long)]
    n: usize,
    /// Subspace dimension at each vertex (GL chains only)
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// "maximal", "single", or a vertex list like "0,1"
    #[arg(long)]
    shape: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ChainGroup {
    Gl,
    Gsp,
}

// ---------------------------------------------------------------------------
// Failures and flag-value parsers.

enum Failure {
    /// The library rejected a structurally valid request; exit code 1.
    Domain(String),
    /// The request itself is malformed; exit code 2.
    Usage(String),
}

impl From<localmodel::Error> for Failure {
    fn from(e: localmodel::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s.to_ascii_lowercase().as_str() {
        "a" => Ok(Family::A),
        "b" => Ok(Family::B),
        "c" => Ok(Family::C),
        "d" => Ok(Family::D),
        "gl" => Ok(Family::Gl),
        "sl" => Ok(Family::Sl),
        "pgl" => Ok(Family::Pgl),
        "gsp" => Ok(Family::Gsp),
        other => Err(format!(
            "unknown family {other:?}; expected A, B, C, D, GL, SL, PGL, or GSp"
        )),
    }
}

fn parse_autkind(s: &str) -> Result<AutKind, String> {
    AutKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    Algebra::from_str(s).map_err(|e| e.to_string())
}

fn parse_form_kind(s: &str) -> Result<FormKind, String> {
    FormKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_subcase(s: &str) -> Result<Subcase, String> {
    Subcase::from_str(s).map_err(|e| e.to_string())
}

fn parse_chain_group(s: &str) -> Result<ChainGroup, String> {
    match s.to_ascii_lowercase().as_str() {
        "gl" => Ok(ChainGroup::Gl),
        "gsp" => Ok(ChainGroup::Gsp),
        other => Err(format!("unknown chain group {other:?}; expected gl or gsp")),
    }
}

fn parse_mat(s: &str) -> Result<Mat, String> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| format!("bad matrix entry {t:?}: {e}"))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("expected a square matrix: rows separated by ';', entries by ','".into());
    }
    Ok(Mat::from_rows(&rows))
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Err(Failure::Usage("empty integer list".into()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Failure::Usage(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Err(Failure::Usage("empty index list".into()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Failure::Usage(format!("bad index {t:?}: {e}")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Resolution of shared flag groups into library inputs.

fn natural_order(kind: &AutKind) -> usize {
    match kind {
        AutKind::Named(AutName::Identity) => 1,
        AutKind::Named(AutName::Flip) => 2,
        AutKind::Named(AutName::Triality) => 3,
        AutKind::Perm(p) => perm_order(p),
    }
}

/// Order of a node permutation; malformed inputs fall back to 1 and are
/// rejected later by the library with a precise message.
fn perm_order(p: &[usize]) -> usize {
    let n = p.len();
    if n == 0 || p.iter().any(|&i| i >= n) {
        return 1;
    }
    let mut seen = vec![false; n];
    let mut ord = 1usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
            if len > n {
                return 1;
            }
        }
        ord = lcm(ord, len);
    }
    ord
}

fn lcm(a: usize, b: usize) -> usize {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn group_spec(o: &GroupOpts) -> GroupSpec {
    let kind = o.automorphism.clone();
    let automorphism = if matches!(kind, AutKind::Named(AutName::Identity)) && o.aut_order.is_none()
    {
        None
    } else {
        let order = o.aut_order.unwrap_or_else(|| natural_order(&kind));
        Some(AutomorphismSpec { order, kind })
    };
    GroupSpec {
        family: o.group,
        rank: o.rank,
        automorphism,
    }
}

fn realize_opts(o: &GroupOpts) -> Result<(RootDatum, PinnedAutomorphism), Failure> {
    Ok(realize(&group_spec(o))?)
}

fn build_group(o: &GroupOpts) -> Result<ExtAffineWeylGroup, Failure> {
    let (rd, gamma) = realize_opts(o)?;
    let caps = Caps {
        weyl: o.max_weyl,
        elements: o.max_elements,
    };
    let group = make_iwahori_weyl(&rd, &gamma, caps)?;
    eprintln!(
        "localmodel: {} | relative rank {} | {} affine generators",
        group_spec(o).label(),
        group.relative.free_rank,
        group.num_simple()
    );
    Ok(group)
}

fn resolve_action(a: &ActionOpts) -> Result<LatticeWithAction, Failure> {
    if let Some(m) = &a.matrix {
        let order = a
            .order
            .ok_or_else(|| Failure::Usage("--order is required with --matrix".into()))?;
        return Ok(LatticeWithAction::new(m.clone(), order)?);
    }
    let (Some(family), Some(rank)) = (a.group, a.rank) else {
        return Err(Failure::Usage(
            "provide either --matrix with --order, or --group with --rank".into(),
        ));
    };
    let kind = a.automorphism.clone();
    let order = a.order.unwrap_or_else(|| natural_order(&kind));
    let spec = GroupSpec {
        family,
        rank,
        automorphism: Some(AutomorphismSpec { order, kind }),
    };
    let (_rd, gamma) = realize(&spec)?;
    Ok(LatticeWithAction::new(gamma.matrix.clone(), gamma.order)?)
}

fn parse_parahoric(group: &ExtAffineWeylGroup, s: &str) -> Result<ParahoricSubgroup, Failure> {
    match s {
        "iwahori" => Ok(ParahoricSubgroup::iwahori()),
        "special" => Ok(ParahoricSubgroup::special_maximal(group)),
        list => {
            let nodes = parse_usize_list(list).map_err(|_| {
                Failure::Usage(format!(
                    "--parahoric expects \"iwahori\", \"special\", or a node list like \"0,2\" (got {s:?})"
                ))
            })?;
            Ok(ParahoricSubgroup::new(nodes))
        }
    }
}

fn build_shape(o: &ShapeOpts) -> Result<ChainShape, Failure> {
    if o.group == ChainGroup::Gsp && o.d != 1 {
        return Err(Failure::Usage(
            "--d applies to GL chains only; GSp chains fix the subspace dimension".into(),
        ));
    }
    let symplectic = o.group == ChainGroup::Gsp;
    Ok(match o.shape.as_str() {
        "maximal" => ChainShape::maximal(o.n, symplectic)?,
        "single" => ChainShape::single(o.n, symplectic)?,
        list => {
            let vertices = parse_usize_list(list).map_err(|_| {
                Failure::Usage(format!(
                    "--shape expects \"maximal\", \"single\", or a vertex list like \"0,1\" (got {list:?})"
                ))
            })?;
            match o.group {
                ChainGroup::Gl => ChainShape::gl(o.n, vertices)?,
                ChainGroup::Gsp => ChainShape::gsp(o.n, vertices)?,
            }
        }
    })
}

/// Parses the element grammar: segments "t:<ints>" (translation by a
/// cocharacter in ambient coordinates) and "w:<indices>" (product of
/// affine simple reflections), joined by ";" and multiplied left to right.
fn parse_element(group: &ExtAffineWeylGroup, s: &str) -> Result<ExtAffineWeylElement, Failure> {
    let mut x = group.identity();
    for seg in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(rest) = seg.strip_prefix("t:") {
            let v = parse_i64_list(rest)?;
            let t = group.translation_of_cocharacter(&v)?;
            x = group.multiply(&x, &t);
        } else if let Some(rest) = seg.strip_prefix("w:") {
            for k in parse_usize_list(rest)? {
                if k >= group.num_simple() {
                    return Err(Failure::Usage(format!(
                        "reflection index {k} out of range; the group has {} affine generators",
                        group.num_simple()
                    )));
                }
                x = group.multiply(&x, &group.simple_reflection(k));
            }
        } else {
            return Err(Failure::Usage(format!(
                "bad element segment {seg:?}; expected \"t:<ints>\" or \"w:<indices>\""
            )));
        }
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Output rows.

fn json<T: Serialize>(t: &T) -> String {
    serde_json::to_string(t).expect("CLI output serialization cannot fail")
}

#[derive(Serialize)]
struct ElementRow {
    length: i64,
    word: Vec<usize>,
    omega: FgElement,
    translation: FgElement,
}

fn element_row(group: &ExtAffineWeylGroup, x: &ExtAffineWeylElement) -> ElementRow {
    let (word, _tau) = group.reduced_word(x);
    ElementRow {
        length: group.length(x),
        word,
        omega: group.kappa(x),
        translation: x.translation.clone(),
    }
}

fn element_lines(group: &ExtAffineWeylGroup, elements: &[ExtAffineWeylElement]) -> Vec<String> {
    let mut rows: Vec<ElementRow> = elements.par_iter().map(|x| element_row(group, x)).collect();
    rows.sort_by(|a, b| {
        (a.length, &a.word, &a.omega, &a.translation).cmp(&(
            b.length,
            &b.word,
            &b.omega,
            &b.translation,
        ))
    });
    rows.par_iter().map(json).collect()
}

#[derive(Serialize)]
struct GroupShow {
    label: String,
    family: Family,
    rank: usize,
    aut_order: usize,
    node_permutation: Vec<usize>,
    relative_rank: usize,
    simple_generators: usize,
    finite_generators: usize,
    components: Vec<Vec<usize>>,
    echelonnage: Vec<i64>,
    positive_relative_roots: usize,
    pi1: FgAbelianGroup,
    omega_order: Option<String>,
}

#[derive(Serialize)]
struct AbelianOut {
    free_rank: usize,
    torsion: Vec<i64>,
    order: Option<String>,
}

fn abelian_line(g: &FgAbelianGroup) -> String {
    json(&AbelianOut {
        free_rank: g.free_rank,
        torsion: g.torsion.clone(),
        order: g.order().map(|b| b.to_string()),
    })
}

#[derive(Serialize)]
struct BruhatOut {
    leq: bool,
}

#[derive(Serialize)]
struct SizeOut {
    size: usize,
}

#[derive(Serialize)]
struct PolyOut {
    poly: Vec<i64>,
}

#[derive(Serialize)]
struct QValueOut {
    q: i64,
    value: i64,
}

#[derive(Serialize)]
struct QCountOut {
    q: usize,
    count: u64,
}

#[derive(Serialize)]
struct CompareOut {
    count: u64,
    predicted: i64,
    #[serde(rename = "match")]
    matched: bool,
}

#[derive(Serialize)]
struct ZmuSummary {
    support_size: usize,
    subset: bool,
    extremes_nonzero: bool,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    central: Option<bool>,
}

#[derive(Serialize)]
struct ZmuRow {
    length: i64,
    word: Vec<usize>,
    omega: FgElement,
    translation: FgElement,
    /// Coefficient as (exponent, coefficient) pairs of a Laurent polynomial
    /// in v, ordered by exponent.
    coeff: Vec<(i64, i64)>,
}

#[derive(Serialize)]
struct AmuOut {
    sign: i64,
    two_rho_pairing: i64,
    coset: Vec<i64>,
}

#[derive(Serialize)]
struct DimOut {
    dim: usize,
}

#[derive(Serialize)]
struct ClassifyOut<'a> {
    #[serde(flatten)]
    entry: &'a CatalogEntry,
    n: i64,
    absolute_rank: usize,
    relative_rank: usize,
    inertia_degree: i64,
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

fn cmd_group_show(o: &GroupOpts) -> Result<Vec<String>, Failure> {
    let (_rd, gamma) = realize_opts(o)?;
    let group = build_group(o)?;
    let show = GroupShow {
        label: group_spec(o).label(),
        family: o.group,
        rank: o.rank,
        aut_order: gamma.order,
        node_permutation: gamma.perm.clone(),
        relative_rank: group.relative.free_rank,
        simple_generators: group.num_simple(),
        finite_generators: group.num_finite_simple(),
        components: group.components.clone(),
        echelonnage: group.relative.echelonnage.clone(),
        positive_relative_roots: group.relative.positive_roots.len(),
        pi1: group.pi1.clone(),
        omega_order: group.pi1.order().map(|b| b.to_string()),
    };
    Ok(vec![json(&show)])
}

fn cmd_cohomology(cmd: &CohomologyCmd) -> Result<Vec<String>, Failure> {
    Ok(vec![match cmd {
        CohomologyCmd::H1 { action } => abelian_line(&cyclic_h1(&resolve_action(action)?)),
        CohomologyCmd::H2 { action } => abelian_line(&cyclic_h2(&resolve_action(action)?)),
        CohomologyCmd::Coinv { action } => {
            abelian_line(&coinvariants(&resolve_action(action)?).group)
        }
        CohomologyCmd::Pi1 { group } => {
            let (rd, gamma) = realize_opts(group)?;
            abelian_line(&kottwitz_pi1(&rd, &gamma))
        }
    }])
}

fn cmd_weyl(cmd: &WeylCmd) -> Result<Vec<String>, Failure> {
    match cmd {
        WeylCmd::Length { group, element } => {
            let g = build_group(group)?;
            let x = parse_element(&g, element)?;
            Ok(vec![json(&element_row(&g, &x))])
        }
        WeylCmd::Bruhat { group, a, b } => {
            let g = build_group(group)?;
            let xa = parse_element(&g, a)?;
            let xb = parse_element(&g, b)?;
            Ok(vec![json(&BruhatOut {
                leq: g.bruhat_leq(&xa, &xb)?,
            })])
        }
        WeylCmd::Ball {
            group,
            radius,
            omega_bound,
        } => {
            let g = build_group(group)?;
            let elements = g.ball(*radius, *omega_bound)?;
            Ok(element_lines(&g, &elements))
        }
    }
}

fn cmd_adm(cmd: &AdmCmd) -> Result<Vec<String>, Failure> {
    match cmd {
        AdmCmd::Enumerate { group, mu } => {
            let g = build_group(group)?;
            let set = adm(&g, &mu.mu)?;
            Ok(element_lines(&g, &set.elements))
        }
        AdmCmd::Count { group, mu } => {
            let g = build_group(group)?;
            let set = adm(&g, &mu.mu)?;
            Ok(vec![json(&SizeOut { size: set.len() })])
        }
        AdmCmd::Parahoric {
            group,
            mu,
            parahoric,
        } => {
            let g = build_group(group)?;
            let p = parse_parahoric(&g, &parahoric.parahoric)?;
            let reps = adm_parahoric(&g, &mu.mu, &p)?;
            Ok(element_lines(&g, &reps))
        }
        AdmCmd::Points {
            group,
            mu,
            parahoric,
            q,
        } => {
            let g = build_group(group)?;
            let p = parse_parahoric(&g, &parahoric.parahoric)?;
            let poly = point_count_poly(&g, &mu.mu, &p)?;
            let mut lines = vec![json(&PolyOut {
                poly: poly.coeffs.clone(),
            })];
            lines.extend(q.iter().map(|&q| {
                json(&QValueOut {
                    q,
                    value: poly.eval(q),
                })
            }));
            Ok(lines)
        }
    }
}

fn cmd_chain(cmd: &ChainCmd) -> Result<Vec<String>, Failure> {
    match cmd {
        ChainCmd::Count { shape, q } => {
            let sh = build_shape(shape)?;
            q.par_iter()
                .map(|&q| {
                    let (count, _) = match shape.group {
                        ChainGroup::Gl => enumerate_gl_points(&sh, shape.d, q, false)?,
                        ChainGroup::Gsp => enumerate_gsp_points(&sh, q, false)?,
                    };
                    Ok(json(&QCountOut { q, count }))
                })
                .collect()
        }
        ChainCmd::Compare { shape, q } => {
            let sh = build_shape(shape)?;
            let report = compare_with_admissible(&sh, shape.d, *q)?;
            Ok(vec![json(&CompareOut {
                count: report.geometric,
                predicted: report.predicted,
                matched: report.matched,
            })])
        }
    }
}

fn cmd_hecke(cmd: &HeckeCmd) -> Result<Vec<String>, Failure> {
    match cmd {
        HeckeCmd::Zmu {
            group,
            mu,
            params,
            check_central,
        } => {
            let g = build_group(group)?;
            let algebra = match params {
                Some(p) => HeckeAlgebra::new(g, p)?,
                None => HeckeAlgebra::with_default_params(g)?,
            };
            let z = algebra.bernstein_z_mu(&mu.mu)?;
            let report = z_mu_support(&algebra, &z, &mu.mu)?;
            let central = if *check_central {
                Some(algebra.is_central(&z)?)
            } else {
                None
            };
            let mut lines = vec![json(&ZmuSummary {
                support_size: z.support_len(),
                subset: report.subset,
                extremes_nonzero: report.extremes_nonzero,
                exact: report.exact,
                central,
            })];
            let mut rows: Vec<ZmuRow> = z
                .iter()
                .map(|(x, c)| {
                    let (word, _tau) = algebra.group.reduced_word(x);
                    ZmuRow {
                        length: algebra.group.length(x),
                        word,
                        omega: algebra.group.kappa(x),
                        translation: x.translation.clone(),
                        coeff: c.to_pairs(),
                    }
                })
                .collect();
            rows.sort_by(|a, b| {
                (a.length, &a.word, &a.omega, &a.translation).cmp(&(
                    b.length,
                    &b.word,
                    &b.omega,
                    &b.translation,
                ))
            });
            lines.extend(rows.par_iter().map(json).collect::<Vec<_>>());
            Ok(lines)
        }
        HeckeCmd::Amu { group, mu } => {
            let (rd, _gamma) = realize_opts(group)?;
            let a = a_mu_minuscule(&rd, &mu.mu)?;
            Ok(vec![json(&AmuOut {
                sign: a.sign,
                two_rho_pairing: a.two_rho_pairing,
                coset: a.coset,
            })])
        }
        HeckeCmd::VmuInv { group, mu } => {
            let (rd, gamma) = realize_opts(group)?;
            let dim = inertia_invariant_dim(&rd, &gamma, &mu.mu)?;
            Ok(vec![json(&DimOut { dim })])
        }
    }
}

fn cmd_catalog(cmd: &CatalogCmd) -> Result<Vec<String>, Failure> {
    match cmd {
        CatalogCmd::List => Ok(catalog().iter().map(json).collect()),
        CatalogCmd::Classify {
            spec,
            algebra,
            kind,
            subcase,
            n,
        } => {
            let fs = if let Some(text) = spec {
                serde_json::from_str::<FormSpec>(text)
                    .map_err(|e| Failure::Usage(format!("--spec: {e}")))?
            } else {
                let missing = |flag: &str| {
                    Failure::Usage(format!("{flag} is required unless --spec is given"))
                };
                FormSpec {
                    algebra: algebra.ok_or_else(|| missing("--algebra"))?,
                    kind: kind.ok_or_else(|| missing("--kind"))?,
                    subcase: subcase.ok_or_else(|| missing("--subcase"))?,
                    n: n.ok_or_else(|| missing("--n"))?,
                }
            };
            fs.algebra.validate()?;
            let entry = classify_form(&fs)?;
            Ok(vec![json(&ClassifyOut {
                entry,
                n: fs.n,
                absolute_rank: entry.absolute_rank(&fs)?,
                relative_rank: entry.relative_rank(&fs)?,
                inertia_degree: entry.inertia_degree(&fs)?,
            })])
        }
    }
}

fn dispatch(cmd: &Cmd) -> Result<Vec<String>, Failure> {
    match cmd {
        Cmd::Group {
            cmd: GroupCmd::Show { group },
        } => cmd_group_show(group),
        Cmd::Cohomology { cmd } => cmd_cohomology(cmd),
        Cmd::Weyl { cmd } => cmd_weyl(cmd),
        Cmd::Adm { cmd } => cmd_adm(cmd),
        Cmd::Chain { cmd } => cmd_chain(cmd),
        Cmd::Hecke { cmd } => cmd_hecke(cmd),
        Cmd::Catalog { cmd } => cmd_catalog(cmd),
    }
}

// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if jobs > 0 {
            builder = builder.num_threads(jobs);
        }
        builder
            .build_global()
            .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    }
    let lines = dispatch(&cli.command)?;
    let mut payload = String::new();
    for line in &lines {
        payload.push_str(line);
        payload.push('\n');
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(payload.as_bytes())?;
    stdout.flush()?;
    if let Some(path) = &cli.out {
        std::fs::write(path, payload.as_bytes())
            .map_err(|e| Failure::Domain(format!("--out {}: {e}", path.display())))?;
    }
    eprintln!("localmodel: {} result line(s)", lines.len());
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
