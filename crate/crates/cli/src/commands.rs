//! Subcommand arguments and their translation into library calls and checks.

use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use anosovlab::acceptance::{run_all, run_criterion, CRITERIA};
use anosovlab::chords::{class_disjointness, enumerate_chords, enumerate_rational_fibers, fibers_pairwise_distinct, hw_rank_table, Sign};
use anosovlab::exact::{GradedZModule, IntMatrix};
use anosovlab::forms::{run_suite, SuiteConfig, SUITES};
use anosovlab::homology::{
    all_triples, circle_bundle_cohomology, hochschild_dual_numbers, hh_c_ranks, mapping_torus_cohomology, sh_mcduff, sh_torus_bundle,
    triple_admissible,
};
use anosovlab::hyperbolic::{distance, grading_check, intersect, orthogeodesic, triangle_enumerate, Geodesic};
use anosovlab::lagrangian::{build_exact_beta, u_shaped_curve, verify_exactness, CurveFile, StripSpec};
use anosovlab::oracle::triangle_count_by_sampling;
use anosovlab::report::Check;
use anosovlab::surface::{mcduff_hw_generators, FuchsianRep, SurfacePresentation, Word, MAX_WORD_BOUND};
use anosovlab::toral::{canonical_orbit, eigen_data, fixed_points, lefschetz_count, orbits_up_to_period, TorusPoint};

use crate::report::{Outcome, Table};

pub struct Context {
    pub seed: u64,
    pub timing: bool,
}

pub type Ran = (String, Value, Outcome);

fn params<T: Serialize>(args: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(args)?)
}

fn ran<T: Serialize>(name: &str, args: &T, results: Value, table: Table, checks: Vec<Check>) -> anyhow::Result<Ran> {
    Ok((name.to_string(), params(args)?, Outcome { results, table, checks }))
}

fn matrix(text: &str) -> anyhow::Result<IntMatrix> {
    IntMatrix::parse_square(text).map_err(|e| anyhow!("--matrix {text:?}: {e}"))
}

fn point(flag: &str, text: &str) -> anyhow::Result<TorusPoint> {
    TorusPoint::parse(text).map_err(|e| anyhow!("--{flag} {text:?}: {e}"))
}

fn sign(text: &str) -> anyhow::Result<Sign> {
    Sign::parse(text).ok_or_else(|| anyhow!("--sign must be + or -, got {text:?}"))
}

fn geodesic(flag: &str, text: &str) -> anyhow::Result<Geodesic> {
    Geodesic::parse(text).map_err(|e| anyhow!("--{flag} {text:?}: {e}"))
}

fn word(flag: &str, text: &str, genus: u32) -> anyhow::Result<Word> {
    Word::parse(text, genus).map_err(|e| anyhow!("--{flag} {text:?}: {e}"))
}

fn positive(flag: &str, x: f64) -> anyhow::Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        bail!("--{flag} must be positive, got {x}")
    }
}

fn graded_rows(h: &GradedZModule) -> Vec<Value> {
    h.degrees().map(|(d, m)| json!({"degree": d, "free": m.free_rank(), "torsion": m.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")})).collect()
}

const GRADED_COLUMNS: [&str; 3] = ["degree", "free", "torsion"];

fn cohomology_checks(h: &GradedZModule, a: &IntMatrix) -> Vec<Check> {
    let b: Vec<u64> = (0..=3).map(|k| h.free_rank(k)).collect();
    let torsion = (a.trace() - num_bigint::BigInt::from(2)).magnitude().clone();
    vec![
        Check::flag("b_k = b_(3-k)", (0..=3).all(|k| b[k] == b[3 - k])),
        Check::counts("euler characteristic", 0, h.euler_characteristic()),
        Check::flag(format!("|H^2 torsion| = |tr A - 2| = {torsion}"), h.get(2).torsion_order().magnitude() == &torsion),
    ]
}

// ---------------------------------------------------------------------------------------
// toral

#[derive(Subcommand, Debug)]
pub enum ToralCmd {
    /// Periodic orbits of minimal period at most N
    Orbits(OrbitsArgs),
    /// Fixed points of A^n
    Fixed(FixedArgs),
    /// Eigenvalues and eigenvectors in exact arithmetic
    Eigen(MatrixArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct MatrixArgs {
    /// Row-major entries, e.g. "2 1 1 1"
    #[arg(long)]
    pub matrix: String,
}

#[derive(Args, Debug, Serialize)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub matrix: String,
    /// Largest period
    #[arg(long = "N", default_value_t = 3)]
    #[serde(rename = "N")]
    pub n: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct FixedArgs {
    #[arg(long)]
    pub matrix: String,
    /// Power of the map
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

impl ToralCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            ToralCmd::Orbits(args) => {
                let a = matrix(&args.matrix)?;
                let orbits = orbits_up_to_period(&a, args.n)?;
                let mut checks = Vec::new();
                let mut counts = Vec::new();
                for n in 1..=args.n {
                    let sum: u64 = (1..=n).filter(|d| n % d == 0).map(|d| u64::from(d) * orbits.iter().filter(|o| o.period == d).count() as u64).sum();
                    let expected = lefschetz_count(&a, n);
                    counts.push(json!({"n": n, "orbit_sum": sum, "lefschetz": expected.to_string()}));
                    checks.push(Check::flag(format!("n = {n}: sum of d * orbits(d) = |tr A^n - 2|"), num_bigint::BigInt::from(sum) == expected));
                }
                let items = orbits.iter().map(|o| json!({"period": o.period, "points": o.points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")})).collect();
                ran("toral orbits", args, json!({"orbits": orbits, "counts": counts}), Table::new(&["period", "points"], items), checks)
            }
            ToralCmd::Fixed(args) => {
                let a = matrix(&args.matrix)?;
                let pts = fixed_points(&a, args.n)?;
                let expected = lefschetz_count(&a, args.n);
                let checks = vec![Check::flag(format!("{} fixed points = |tr A^n - 2|", pts.len()), num_bigint::BigInt::from(pts.len()) == expected)];
                let items = pts.iter().map(|p| json!({"x": p.x().to_string(), "y": p.y().to_string()})).collect();
                ran("toral fixed", args, json!({"points": pts, "count": pts.len()}), Table::new(&["x", "y"], items), checks)
            }
            ToralCmd::Eigen(args) => {
                let a = matrix(&args.matrix)?;
                let e = eigen_data(&a)?;
                let residual_free = e.residuals().iter().all(|r| r.is_zero());
                let results = json!({
                    "trace": e.trace.to_string(),
                    "radicand": e.radicand.to_string(),
                    "lambda_plus": e.lambda_plus.to_f64(),
                    "lambda_minus": e.lambda_minus.to_f64(),
                    "log_dilation": e.log_dilation,
                    "expanding": e.expanding_f64(),
                    "contracting": e.contracting_f64(),
                });
                let item = json!({"lambda_plus": e.lambda_plus.to_f64(), "lambda_minus": e.lambda_minus.to_f64(), "log_dilation": e.log_dilation});
                ran("toral eigen", args, results, Table::new(&["lambda_plus", "lambda_minus", "log_dilation"], vec![item]), vec![Check::flag("exact eigen residuals vanish", residual_free)])
            }
        }
    }
}

// ---------------------------------------------------------------------------------------
// chords

#[derive(Subcommand, Debug)]
pub enum ChordsCmd {
    /// Chords between two points, filtered by box length
    Enumerate(EnumerateArgs),
    /// Primitive cone vectors (closed orbits on rational fibers)
    Fibers(FibersArgs),
    /// Disjointness of the + and - chord classes
    Disjoint(DisjointArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub matrix: String,
    /// Source point, e.g. "0/1 0/1"
    #[arg(long, default_value = "0/1 0/1")]
    pub p: String,
    #[arg(long, default_value = "0/1 0/1")]
    pub q: String,
    /// + or -
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, default_value_t = 10)]
    pub kmax: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct FibersArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, default_value_t = 10)]
    pub max_norm: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DisjointArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value_t = 20)]
    pub kmax: u64,
}

impl ChordsCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            ChordsCmd::Enumerate(args) => {
                let e = eigen_data(&matrix(&args.matrix)?)?;
                let (p, q, s) = (point("p", &args.p)?, point("q", &args.q)?, sign(&args.sign)?);
                let set = enumerate_chords(&e, &p, &q, s, args.kmax);
                let items: Vec<Value> = set
                    .chords
                    .iter()
                    .map(|c| json!({"m": c.translate.0, "n": c.translate.1, "sign": c.sign.symbol(), "z": c.slope, "box": c.box_length, "action": c.action}))
                    .collect();
                let checks = vec![
                    Check::flag("filtration is monotone in k", set.counts_by_k.windows(2).all(|w| w[0] <= w[1])),
                    Check::counts("last filtration count equals chord count", set.chords.len() as i64, *set.counts_by_k.last().unwrap_or(&0) as i64),
                ];
                let results = json!({"chords": items, "counts_by_k": set.counts_by_k});
                ran("chords enumerate", args, results, Table::new(&["m", "n", "sign", "z", "box", "action"], items), checks)
            }
            ChordsCmd::Fibers(args) => {
                let e = eigen_data(&matrix(&args.matrix)?)?;
                let s = sign(&args.sign)?;
                let fibers = enumerate_rational_fibers(&e, s, args.max_norm);
                let checks = vec![Check::flag("fiber coordinates pairwise distinct (exact)", fibers_pairwise_distinct(&e, s, &fibers))];
                let items = fibers.iter().map(|f| serde_json::to_value(f).expect("plain data")).collect();
                ran("chords fibers", args, json!({"fibers": fibers, "count": fibers.len()}), Table::new(&["m", "n", "slope"], items), checks)
            }
            ChordsCmd::Disjoint(args) => {
                let e = eigen_data(&matrix(&args.matrix)?)?;
                let cert = class_disjointness(&e, args.kmax);
                let checks = vec![Check::flag("+ and - cones share no lattice vector", cert.disjoint)];
                let item = serde_json::to_value(&cert)?;
                ran(
                    "chords disjoint",
                    args,
                    item.clone(),
                    Table::new(&["irrational_edges", "opposite_quadrants", "box_length", "plus_count", "minus_count", "overlap", "disjoint"], vec![item]),
                    checks,
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------------------
// hw

#[derive(Subcommand, Debug)]
pub enum HwCmd {
    /// Generators between cylinders over two closed geodesics of a hyperbolic surface
    Mcduff(McDuffHwArgs),
    /// Generator ranks between the orbits through two periodic points of a toral map
    Torus(TorusHwArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct McDuffHwArgs {
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
    /// Word such as "a1" or "a1B2" (capitals are inverses)
    #[arg(long)]
    pub gamma: String,
    #[arg(long)]
    pub beta: String,
    /// Word-length bound for the double coset search
    #[arg(long = "L", default_value_t = 6)]
    #[serde(rename = "L")]
    pub l: usize,
    /// Truncation of the fiber towers
    #[arg(long = "T", default_value_t = 3)]
    #[serde(rename = "T")]
    pub t: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct TorusHwArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value = "0/1 0/1")]
    pub p: String,
    #[arg(long, default_value = "0/1 0/1")]
    pub q: String,
    #[arg(long, default_value_t = 10)]
    pub kmax: u64,
}

impl HwCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            HwCmd::Mcduff(args) => {
                let rep = FuchsianRep::<f64>::regular(args.genus)?;
                let (g, b) = (word("gamma", &args.gamma, args.genus)?, word("beta", &args.beta, args.genus)?);
                let bound = args.l.min(MAX_WORD_BOUND);
                let mut r = mcduff_hw_generators(&g, &b, &rep, bound, args.t)?;
                if bound < args.l {
                    r.caveat.push_str(&format!("; L = {} exceeds the supported search and was clamped to {bound}", args.l));
                }
                let bound_on_crossings = if r.case == anosovlab::surface::PairCase::Distinct { 1 } else { 2 } * r.intersection_points;
                let checks = vec![
                    Check::counts("total = chords + towers + circle", (r.chord_part as u64 + r.tower + r.circle_ranks[0] + r.circle_ranks[1]) as i64, r.total as i64),
                    Check::flag("crossing cosets within the intersection bound", r.crossing_cosets <= bound_on_crossings),
                ];
                let item = serde_json::to_value(&r)?;
                let columns = ["gamma", "beta", "case", "word_bound", "t_cutoff", "chord_part", "intersection_points", "tower", "total", "caveat"];
                ran("hw mcduff", args, item.clone(), Table::new(&columns, vec![item]), checks)
            }
            HwCmd::Torus(args) => {
                let a = matrix(&args.matrix)?;
                let e = eigen_data(&a)?;
                let (p, q) = (point("p", &args.p)?, point("q", &args.q)?);
                let (src, dst) = (canonical_orbit(&a, &p), canonical_orbit(&a, &q));
                let t = hw_rank_table(&e, &src, &dst, args.kmax)?;
                let checks = vec![Check::counts("total = chords + intersection", (t.plus_chords + t.minus_chords + t.intersection[0] + t.intersection[1]) as i64, t.total as i64)];
                let item = serde_json::to_value(&t)?;
                let results = json!({"source": src, "target": dst, "ranks": t});
                ran("hw torus", args, results, Table::new(&["k_max", "plus_chords", "minus_chords", "intersection", "total"], vec![item]), checks)
            }
        }
    }
}

// ---------------------------------------------------------------------------------------
// sh and homology

#[derive(Subcommand, Debug)]
pub enum ShCmd {
    /// Torus-bundle filling: fiber windows at both ends around H*(M)
    Torus(ShTorusArgs),
    /// McDuff domain over a closed surface
    Mcduff(ShMcDuffArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ShTorusArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value_t = 10)]
    pub max_norm: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ShMcDuffArgs {
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
    /// Highest fiber power at the negative end
    #[arg(long = "T", default_value_t = 3)]
    #[serde(rename = "T")]
    pub t: u32,
    /// Comma-separated free homotopy classes for the positive end
    #[arg(long, default_value = "")]
    pub classes: String,
}

fn sh_torus(args: &ShTorusArgs, name: &str) -> anyhow::Result<Ran> {
    let a = matrix(&args.matrix)?;
    let sh = sh_torus_bundle(&a, args.max_norm)?;
    let e = eigen_data(&a)?;
    let mut checks = cohomology_checks(&sh.middle, &a);
    for block in [&sh.minus, &sh.plus] {
        checks.push(Check::flag(format!("{} fibers pairwise distinct", block.sign.symbol()), fibers_pairwise_distinct(&e, block.sign, &block.fibers)));
    }
    let items = [("minus", &sh.minus), ("plus", &sh.plus)]
        .iter()
        .map(|(side, b)| json!({"side": side, "orbits": b.orbit_count, "rank0": b.ranks.free_rank(0), "rank1": b.ranks.free_rank(1)}))
        .collect();
    ran(name, args, serde_json::to_value(&sh)?, Table::new(&["side", "orbits", "rank0", "rank1"], items), checks)
}

fn sh_mcduff_run(args: &ShMcDuffArgs, name: &str) -> anyhow::Result<Ran> {
    let p = SurfacePresentation::new(args.genus)?;
    let classes: Vec<String> = args.classes.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    let mut keys = BTreeSet::new();
    let mut nontrivial = true;
    for c in &classes {
        let k = p.class_key(&word("classes", c, args.genus)?);
        nontrivial &= !k.is_empty();
        keys.insert(k.to_string());
    }
    let sh = sh_mcduff(args.genus, args.t, &classes)?;
    let checks = vec![
        Check::flag("supplied classes are nontrivial", nontrivial),
        Check::counts("supplied classes are pairwise non-conjugate", classes.len() as i64, keys.len() as i64),
        Check::counts("euler characteristic of the unit cotangent bundle", 0, sh.middle.euler_characteristic()),
    ];
    ran(name, args, serde_json::to_value(&sh)?, Table::new(&GRADED_COLUMNS, graded_rows(&sh.middle)), checks)
}

#[derive(Subcommand, Debug)]
pub enum HomologyCmd {
    /// Integral cohomology of the mapping torus of A
    MappingTorus(MatrixArgs),
    /// Integral cohomology of the unit cotangent bundle of a genus-g surface
    CircleBundle(GenusArgs),
    /// Hochschild table of the dual numbers, optionally one copy per orbit
    Hochschild(HochschildArgs),
    /// Same as `sh torus`
    ShTorus(ShTorusArgs),
    /// Same as `sh mcduff`
    ShMcduff(ShMcDuffArgs),
    /// Which component triples may carry nonzero products
    Admissibility(EmptyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenusArgs {
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct HochschildArgs {
    /// Truncation of the periodic resolution
    #[arg(long = "N", default_value_t = 10)]
    #[serde(rename = "N")]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub orbits: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct EmptyArgs {}

impl HomologyCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            HomologyCmd::MappingTorus(args) => {
                let a = matrix(&args.matrix)?;
                let h = mapping_torus_cohomology(&a)?;
                let checks = cohomology_checks(&h, &a);
                ran("homology mapping-torus", args, serde_json::to_value(&h)?, Table::new(&GRADED_COLUMNS, graded_rows(&h)), checks)
            }
            HomologyCmd::CircleBundle(args) => {
                let h = circle_bundle_cohomology(args.genus)?;
                let two_g = 2 * u64::from(args.genus);
                let checks = vec![
                    Check::flag("betti numbers 1, 2g, 2g, 1", (0..=3).map(|k| h.free_rank(k)).collect::<Vec<_>>() == [1, two_g, two_g, 1]),
                    Check::flag("|H^2 torsion| = 2g - 2", h.get(2).torsion_order() == num_bigint::BigInt::from(two_g - 2)),
                ];
                ran("homology circle-bundle", args, serde_json::to_value(&h)?, Table::new(&GRADED_COLUMNS, graded_rows(&h)), checks)
            }
            HomologyCmd::Hochschild(args) => {
                let single = hochschild_dual_numbers(args.n)?;
                let t = hh_c_ranks(args.orbits, args.n)?;
                let checks = vec![
                    Check::flag("supported in total degrees 0 and 1", single.support_total_degrees().iter().all(|d| *d == 0 || *d == 1)),
                    Check::flag("one copy of the single table per orbit", t == single.copies(args.orbits)),
                ];
                let items = t
                    .entries()
                    .map(|(n, q, m)| json!({"homological": n, "internal": q, "total": q - n, "free": m.free_rank(), "torsion": m.torsion().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")}))
                    .collect();
                let results = json!({"table": t, "by_total_degree": t.by_total_degree()});
                ran("homology hochschild", args, results, Table::new(&["homological", "internal", "total", "free", "torsion"], items), checks)
            }
            HomologyCmd::ShTorus(args) => sh_torus(args, "homology sh-torus"),
            HomologyCmd::ShMcduff(args) => sh_mcduff_run(args, "homology sh-mcduff"),
            HomologyCmd::Admissibility(args) => {
                let items: Vec<Value> = all_triples()
                    .into_iter()
                    .map(|(a, b, c)| json!({"a": a.symbol(), "b": b.symbol(), "c": c.symbol(), "admissible": triple_admissible(a, b, c)}))
                    .collect();
                let n = items.iter().filter(|v| v["admissible"] == json!(true)).count();
                let checks = vec![Check::counts("admissible triples", 7, n as i64), Check::counts("rejected triples", 20, (items.len() - n) as i64)];
                ran("homology admissibility", args, json!({"triples": items}), Table::new(&["a", "b", "c", "admissible"], items), checks)
            }
        }
    }
}

impl ShCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            ShCmd::Torus(args) => sh_torus(args, "sh torus"),
            ShCmd::Mcduff(args) => sh_mcduff_run(args, "sh mcduff"),
        }
    }
}

// ---------------------------------------------------------------------------------------
// forms

#[derive(Subcommand, Debug)]
pub enum FormsCmd {
    /// Run one check suite
    Check(FormsArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct FormsArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: String,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

fn check_rows(checks: &[Check]) -> Vec<Value> {
    checks.iter().map(|c| serde_json::to_value(c).expect("plain data")).collect()
}

const CHECK_COLUMNS: [&str; 8] = ["check", "pass", "max_residual", "tolerance", "expected", "actual", "value", "lower"];

impl FormsCmd {
    pub fn run(&self, ctx: &Context) -> anyhow::Result<Ran> {
        let FormsCmd::Check(args) = self;
        let cfg = SuiteConfig { tol: positive("tol", args.tol)?, samples: args.samples, seed: ctx.seed };
        let r = run_suite(&args.suite, &cfg)?;
        ran("forms check", args, json!({"suite": r.suite}), Table::new(&CHECK_COLUMNS, check_rows(&r.checks)), r.checks)
    }
}

// ---------------------------------------------------------------------------------------
// hyperbolic

#[derive(Subcommand, Debug)]
pub enum HyperbolicCmd {
    /// Counter-clockwise triangles cut out by g0, g1 and translates of g2 along g1
    Triangles(TrianglesArgs),
    /// Common perpendicular of two disjoint geodesics
    Orthogeodesic(PairArgs),
    /// Intersection point and angle of two geodesics
    Intersect(PairArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct TrianglesArgs {
    /// Boundary points, e.g. "-1 1" or "inf 0"
    #[arg(long, allow_hyphen_values = true)]
    pub g0: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
    /// Translation length along g1
    #[arg(long, default_value_t = 2.0)]
    pub l1: f64,
    /// Window |k| <= K of translates
    #[arg(long = "K", default_value_t = 10)]
    #[serde(rename = "K")]
    pub k: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
}

impl HyperbolicCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            HyperbolicCmd::Triangles(args) => {
                let (g0, g1, g2) = (geodesic("g0", &args.g0)?, geodesic("g1", &args.g1)?, geodesic("g2", &args.g2)?);
                let r = triangle_enumerate(&g0, &g1, &g2, positive("l1", args.l1)?, args.k)?;
                let checks = vec![
                    Check::flag("every triangle has positive area (Gauss-Bonnet)", r.patterns.iter().all(|p| p.area > 0.0)),
                    Check::flag("exponents satisfy the grading gate", r.patterns.iter().all(|p| grading_check(0, p.k, p.k))),
                    Check::counts("count matches the sampling oracle", triangle_count_by_sampling(&g0, &g1, &g2, args.l1, args.k) as i64, r.count as i64),
                ];
                let items = r.patterns.iter().map(|p| json!({"k": p.k, "area": p.area, "angles": p.angles, "third_geodesic": p.third_geodesic.to_string()})).collect();
                ran("hyperbolic triangles", args, serde_json::to_value(&r)?, Table::new(&["k", "area", "angles", "third_geodesic"], items), checks)
            }
            HyperbolicCmd::Orthogeodesic(args) => {
                let (g1, g2) = (geodesic("g1", &args.g1)?, geodesic("g2", &args.g2)?);
                let o = orthogeodesic(&g1, &g2)?;
                let gap = (distance(o.foot_first, o.foot_second) - o.length).abs();
                let checks = vec![Check::residual("distance between the feet equals the length", gap, 1e-9 * o.length.max(1.0))];
                let item = json!({"length": o.length, "foot_first": [o.foot_first.re, o.foot_first.im], "foot_second": [o.foot_second.re, o.foot_second.im]});
                ran("hyperbolic orthogeodesic", args, item.clone(), Table::new(&["length", "foot_first", "foot_second"], vec![item]), checks)
            }
            HyperbolicCmd::Intersect(args) => {
                let (g1, g2) = (geodesic("g1", &args.g1)?, geodesic("g2", &args.g2)?);
                let x = intersect(&g1, &g2)?;
                let items: Vec<Value> = x.iter().map(|x| json!({"point": [x.point.re, x.point.im], "angle": x.angle})).collect();
                let on_both = x.is_none_or(|x| g1.side(x.point).abs() < 1e-9 && g2.side(x.point).abs() < 1e-9);
                let checks = vec![Check::flag("intersection point lies on both geodesics", on_both)];
                ran("hyperbolic intersect", args, json!({"intersection": items}), Table::new(&["point", "angle"], items), checks)
            }
        }
    }
}

// ---------------------------------------------------------------------------------------
// torus-curve

#[derive(Subcommand, Debug)]
pub enum TorusCurveCmd {
    /// Solve for a stadium curve of weighted area 2π and certify exactness
    Build(BuildArgs),
    /// Re-check a curve file written by `build --curve-out`
    Verify(VerifyArgs),
    /// Curve for the cylinder over the zero section, certified to avoid the origin
    UShape(UShapeArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct BuildArgs {
    #[arg(long, default_value_t = 0.4)]
    pub delta: f64,
    /// Height as a fraction of tanh(delta)
    #[arg(long, default_value_t = 0.9)]
    pub height_frac: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Number of samples stored in the curve file
    #[arg(long, default_value_t = 1025)]
    pub samples: usize,
    /// Write the sampled curve here
    #[arg(long)]
    pub curve_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct UShapeArgs {
    #[arg(long, default_value_t = 0.4)]
    pub delta: f64,
    /// Half width of the dip, at most 1
    #[arg(long, default_value_t = 0.5)]
    pub half_width: f64,
    /// Depth of the dip below the axis, less than tanh(delta)
    #[arg(long, default_value_t = 0.1)]
    pub depth: f64,
}

fn exactness_checks(r: &anosovlab::lagrangian::ExactnessReport, tol: f64) -> Vec<Check> {
    vec![
        Check::residual("|weighted area - 2π|", (r.weighted_area - 2.0 * std::f64::consts::PI).abs(), tol),
        Check::residual("|period of the pulled-back form|", r.period.abs(), tol),
        Check::residual("|period - (2π - weighted area)|", r.consistency, tol),
        Check::residual("pointwise dt1 coefficient", r.dt1_residual, 1e-12),
        Check::flag("winds once around the origin inside the strip", r.winding == 1 && r.in_strip),
    ]
}

impl TorusCurveCmd {
    pub fn run(&self, _: &Context) -> anyhow::Result<Ran> {
        match self {
            TorusCurveCmd::Build(args) => {
                let beta = build_exact_beta(args.delta, args.height_frac, positive("tol", args.tol)? * 1e-4)?;
                let report = verify_exactness(&beta.curve(), args.delta)?;
                let checks = exactness_checks(&report, args.tol);
                if let Some(path) = &args.curve_out {
                    let file = CurveFile::from_beta(&beta, args.samples.max(2));
                    std::fs::write(path, crate::report::to_json(&file)?).with_context(|| format!("cannot write {}", path.display()))?;
                }
                let item = json!({"delta": args.delta, "height": beta.height, "length": beta.length, "weighted_area": beta.weighted_area, "period": report.period});
                let results = json!({"beta": beta, "exactness": report});
                ran("torus-curve build", args, results, Table::new(&["delta", "height", "length", "weighted_area", "period"], vec![item]), checks)
            }
            TorusCurveCmd::Verify(args) => {
                let text = std::fs::read_to_string(&args.input).with_context(|| format!("cannot read {}", args.input.display()))?;
                let file: CurveFile = serde_json::from_str(&text).with_context(|| format!("invalid curve file {}", args.input.display()))?;
                let (curve, disagreement) = file.rebuild()?;
                let report = verify_exactness(&curve, file.delta)?;
                let mut checks = vec![Check::residual("stored samples match the rebuilt curve", disagreement, 1e-12)];
                checks.extend(exactness_checks(&report, positive("tol", args.tol)?));
                let item = json!({"samples": file.s.len(), "disagreement": disagreement, "weighted_area": report.weighted_area, "period": report.period});
                ran("torus-curve verify", args, json!({"exactness": report, "disagreement": disagreement}), Table::new(&["samples", "disagreement", "weighted_area", "period"], vec![item]), checks)
            }
            TorusCurveCmd::UShape(args) => {
                let strip = StripSpec::new(args.delta)?;
                let r = u_shaped_curve(args.half_width, args.depth, &strip)?;
                let checks = vec![
                    Check::above("certified distance from the origin", r.min_norm_bound, 0.0),
                    Check::residual("tangency identity on the straight ends", r.end_residual, 1e-12),
                ];
                let item = json!({"half_width": args.half_width, "depth": args.depth, "min_norm_bound": r.min_norm_bound, "end_residual": r.end_residual});
                ran("torus-curve u-shape", args, serde_json::to_value(&r)?, Table::new(&["half_width", "depth", "min_norm_bound", "end_residual"], vec![item]), checks)
            }
        }
    }
}

// ---------------------------------------------------------------------------------------
// suite

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    /// The acceptance battery, one check per criterion
    Acceptance(AcceptanceArgs),
    /// Every forms suite
    Forms(SuiteFormsArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct AcceptanceArgs {
    /// Run a single criterion
    #[arg(long)]
    pub criterion: Option<u8>,
}

#[derive(Args, Debug, Serialize)]
pub struct SuiteFormsArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

impl SuiteCmd {
    pub fn run(&self, ctx: &Context) -> anyhow::Result<Ran> {
        match self {
            SuiteCmd::Acceptance(args) => {
                let reports = match args.criterion {
                    Some(id) => vec![run_criterion(id, ctx.seed, ctx.timing).ok_or_else(|| anyhow!("--criterion must lie in 1..={}, got {id}", CRITERIA.len()))?],
                    None => run_all(ctx.seed, ctx.timing),
                };
                for r in &reports {
                    eprintln!("{}", r.line());
                }
                let checks = reports.iter().map(|r| Check::flag(format!("criterion {}: {}", r.id, r.title), r.pass)).collect();
                let items = reports
                    .iter()
                    .map(|r| json!({"id": r.id, "title": r.title, "pass": r.pass, "checks": r.checks.len(), "failing": r.checks.iter().filter(|c| !c.pass).count(), "elapsed_secs": r.elapsed_secs}))
                    .collect();
                ran("suite acceptance", args, json!({"criteria": reports}), Table::new(&["id", "title", "pass", "checks", "failing", "elapsed_secs"], items), checks)
            }
            SuiteCmd::Forms(args) => {
                let cfg = SuiteConfig { tol: positive("tol", args.tol)?, samples: args.samples, seed: ctx.seed };
                let mut checks = Vec::new();
                let mut results = Vec::new();
                for name in SUITES {
                    let r = run_suite(name, &cfg)?;
                    results.push(json!({"suite": name, "pass": r.pass, "checks": r.checks.len()}));
                    checks.extend(r.checks.into_iter().map(|mut c| {
                        c.name = format!("{name}: {}", c.name);
                        c
                    }));
                }
                ran("suite forms", args, json!({"suites": results}), Table::new(&CHECK_COLUMNS, check_rows(&checks)), checks)
            }
        }
    }
}
