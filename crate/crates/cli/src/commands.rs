use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use fmoon_core::ascent::{orbit_ascent, random_rotation_orbit, AscentParams};
use fmoon_core::clifford::rotation_exact;
use fmoon_core::codes::golay;
use fmoon_core::fockvoa::{census, enumerate_basis, lie_algebra_checks, ns_check, t_products, virasoro_check};
use fmoon_core::json::{parse, CliffordJson, JsonError, MatrixJson, ScalarJson, SpinVectorJson};
use fmoon_core::mckaythompson::{frame_shape, mt_oracle, mt_series, oracle_mismatches, untwisted_part, FrameShape};
use fmoon_core::qseries::{eisenstein2_normalized, eta_quotient, jtheta, jtheta_at_one, theta_e8, through, Flavor, QSeries};
use fmoon_core::spingroup::{central_pair, golay_lift, lift_signed_permutation, SignedPermutation};
use fmoon_core::spinmod::{act, chi_trace, SpinVector};
use fmoon_core::superconformal::{build_coset_system, coset_contraction, sc_check, sc_family, FamilyData};
use fmoon_core::{BitWord, CliffordElement, FockVector, Half, Mode, Sector};

use crate::{CliError, Output};

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Golay code tables, decoding and sextets.
    #[command(subcommand)]
    Golay(GolayCmd),
    /// Clifford algebra products and conjugation matrices.
    #[command(subcommand)]
    Clifford(CliffordCmd),
    /// Spin group lifts.
    #[command(subcommand)]
    Spin(SpinCmd),
    /// The 4096-dimensional spin module.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Superconformal vectors.
    #[command(subcommand)]
    Sc(ScCmd),
    /// q-series.
    #[command(subcommand)]
    Q(QCmd),
    /// Graded traces of a spin element or frame shape data of a matrix.
    Mt(MtArgs),
    /// Fock space checks.
    #[command(subcommand)]
    Fock(FockCmd),
}

#[derive(Subcommand, Debug)]
pub enum GolayCmd {
    /// Weight enumerator and co-code class counts.
    Info,
    /// Co-code class of a word (hex or index list).
    Decode { word: String },
    /// The sextet of a tetrad.
    Sextet { tetrad: String },
}

#[derive(Subcommand, Debug)]
pub enum CliffordCmd {
    /// Product of two elements.
    Mul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Matrix of `u ↦ x u x⁻¹` on the generators.
    Conj {
        #[arg(long)]
        element: String,
    },
    /// Membership in the spin group.
    SpinCheck {
        #[arg(long)]
        element: String,
    },
    /// `cos θ + sin θ e_i e_j` with `θ = eighths·π/4`.
    Rotation {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        eighths: u8,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpinCmd {
    /// Spin element conjugating as a signed permutation.
    LiftPerm {
        #[arg(long)]
        perm: String,
    },
    /// Generators of the Golay lift with their signs.
    GolayLift,
    /// The lift `ε(C)e_C` of a codeword.
    CodeElement { word: String },
    /// The pair `x`, `z·x`.
    CentralPair {
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    /// `x·v`.
    Act {
        #[arg(long)]
        element: String,
        #[arg(long)]
        vector: String,
    },
    /// Trace of `x` on the module.
    Chi {
        #[arg(long)]
        element: String,
    },
    /// The ground vector `1_G`.
    Ground,
}

#[derive(Subcommand, Debug)]
pub enum ScCmd {
    /// The weight 2 and 4 conditions and the norm.
    Check {
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Builds a family vector from its parameters.
    Family {
        #[arg(long)]
        data: String,
    },
    /// Coset contraction for a subgroup, an element `W` and sign seeds.
    Contract {
        #[arg(long)]
        vector: String,
        /// Comma separated generators of Γ.
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<String>,
        #[arg(long)]
        w: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Vec<i8>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Maximizes `⟨x 1_G, t⟩` over the spin group.
    Ascend {
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 50)]
        max_sweeps: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// A product of random plane rotations applied to `1_G`.
    Random {
        #[arg(long, default_value_t = 20)]
        rotations: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum FlavorArg {
    Eta,
    Phi,
}

#[derive(Subcommand, Debug)]
pub enum QCmd {
    /// `η(τ)^48/(η(τ/2)^24 η(2τ)^24)`.
    Jtheta {
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// The expansion at the other cusp, `−2^12 η(2τ)^24/η(τ)^24`.
    JthetaTs {
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Theta series of E8.
    ThetaE8 {
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// `1 − 24 Σ σ(n) qⁿ`.
    E2 {
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Eta or φ quotient of a frame shape such as `1^8.2^8`.
    EtaQuotient {
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Eta)]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
}

#[derive(Args, Debug)]
pub struct MtArgs {
    /// Spin element (Clifford JSON).
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    element: Option<String>,
    /// Orthogonal matrix; gives frame shapes and the untwisted part only.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, default_value_t = 12)]
    terms: usize,
    /// Compare with the literal Fock trace up to this degree.
    #[arg(long)]
    oracle_degree: Option<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SectorArg {
    Untwisted,
    Twisted,
    /// Even states of both sectors.
    Both,
}

#[derive(Subcommand, Debug)]
pub enum FockCmd {
    /// Basis counts by degree.
    Dims {
        #[arg(long, value_enum, default_value_t = SectorArg::Both)]
        sector: SectorArg,
        #[arg(long, default_value = "2")]
        max_degree: String,
    },
    /// Virasoro relations on all basis states up to a degree.
    VirasoroCheck {
        #[arg(long, default_value = "2")]
        max_degree: String,
        #[arg(long, default_value_t = 2)]
        range: i32,
    },
    /// `τ_2τ`, `τ_1τ`, `τ_0τ` for `τ = √8·t`.
    Tproducts {
        #[arg(long)]
        vector: String,
    },
    /// `{G(1/2), G(-1/2)} = 2L(0)` on degree ≤ 1.
    NsCheck {
        #[arg(long)]
        vector: String,
    },
    /// Killing form, antisymmetry and Jacobi on the degree one algebra.
    Killing {
        #[arg(long, default_value_t = 50)]
        jacobi: usize,
    },
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn read(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn load<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| match e {
        JsonError::Syntax(e) => CliError::BadJson(e.to_string()),
        JsonError::Invalid(m) => CliError::Invalid(m),
    })
}

fn load_element(path: &str) -> Result<CliffordElement, CliError> {
    load::<CliffordJson>(path)?.to_element().map_err(invalid)
}

/// Takes a bare vector or any command output carrying one under `vector`.
fn load_vector(path: &str) -> Result<SpinVector, CliError> {
    let mut value: Value = load(path)?;
    if let Some(inner) = value.get_mut("vector") {
        value = inner.take();
    }
    let v: SpinVectorJson = serde_json::from_value(value).map_err(invalid)?;
    v.to_vector().map_err(invalid)
}

fn word(s: &str) -> Result<BitWord, CliError> {
    s.parse().map_err(invalid)
}

fn half(s: &str) -> Result<Half, CliError> {
    s.parse().map_err(invalid)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn element_json(x: &CliffordElement) -> Value {
    to_value(&CliffordJson::from_element(x))
}

fn vector_json(v: &SpinVector) -> Value {
    to_value(&SpinVectorJson::from_vector(v))
}

fn fock_json(v: &FockVector) -> Value {
    Value::Array(
        v.iter()
            .map(|(s, c)| {
                let mut o = to_value(&ScalarJson::from_scalar(c));
                o["state"] = json!(format!("{s:?}"));
                o
            })
            .collect(),
    )
}

/// Truncation keeping `n` coefficients from `q^{-1/2}` in steps of `1/2`.
fn trunc_for(terms: usize) -> i64 {
    through(terms as i64 - 2, 2)
}

fn series_output(s: &QSeries) -> Output {
    Output::new(json!({ "series": to_value(&s.to_json()), "text": s.to_string() }), s.to_string())
}

pub fn run(cmd: Command, seed: u64) -> Result<Output, CliError> {
    match cmd {
        Command::Golay(c) => golay_cmd(c),
        Command::Clifford(c) => clifford_cmd(c),
        Command::Spin(c) => spin_cmd(c),
        Command::Module(c) => module_cmd(c),
        Command::Sc(c) => sc_cmd(c, seed),
        Command::Q(c) => q_cmd(c),
        Command::Mt(a) => mt_cmd(a),
        Command::Fock(c) => fock_cmd(c),
    }
}

fn golay_cmd(c: GolayCmd) -> Result<Output, CliError> {
    let g = golay();
    match c {
        GolayCmd::Info => {
            let weights = g.code.weight_enumerator();
            let mut coweights: BTreeMap<u32, usize> = BTreeMap::new();
            for r in g.reps() {
                *coweights.entry(r.weight()).or_insert(0) += 1;
            }
            let mut text = String::from("weight  codewords\n");
            for (w, n) in &weights {
                let _ = writeln!(text, "{w:>6}  {n}");
            }
            text.push_str("coweight  classes\n");
            for (w, n) in &coweights {
                let _ = writeln!(text, "{w:>8}  {n}");
            }
            Ok(Output::new(
                json!({
                    "codewords": g.code.len(),
                    "minWeight": g.code.min_weight(),
                    "doublyEven": g.code.is_doubly_even(),
                    "selfDual": g.code.is_self_dual(),
                    "weightEnumerator": weights,
                    "cocodeClasses": coweights,
                }),
                text,
            ))
        }
        GolayCmd::Decode { word: w } => {
            let c = g.decode(word(&w)?);
            Ok(Output::new(to_value(&c), format!("{} (coweight {})", c.canonical_rep, c.coweight)))
        }
        GolayCmd::Sextet { tetrad } => {
            let s = g.sextet_of(word(&tetrad)?).map_err(invalid)?;
            let text = s.tetrads.iter().map(|t| format!("{:?}", t.indices())).collect::<Vec<_>>().join("\n");
            Ok(Output::new(to_value(&s), text))
        }
    }
}

fn clifford_cmd(c: CliffordCmd) -> Result<Output, CliError> {
    match c {
        CliffordCmd::Mul { left, right } => {
            let x = load_element(&left)?.mul(&load_element(&right)?).map_err(invalid)?;
            Ok(Output::new(element_json(&x), format!("{x:?}")))
        }
        CliffordCmd::Conj { element } => {
            let m = load_element(&element)?.conjugation_matrix().map_err(invalid)?;
            Ok(Output::new(to_value(&MatrixJson::from_matrix(&m)), m.to_string()))
        }
        CliffordCmd::SpinCheck { element } => {
            let r = load_element(&element)?.spin_check();
            let text = match &r {
                Ok(()) => "spin".to_string(),
                Err(e) => format!("not spin: {e}"),
            };
            let ok = r.is_ok();
            Ok(Output::new(json!({ "spin": ok, "reason": r.err() }), text).verdict(ok))
        }
        CliffordCmd::Rotation { i, j, eighths } => {
            let x = rotation_exact(i, j, eighths).map_err(invalid)?;
            Ok(Output::new(element_json(&x), format!("{x:?}")))
        }
    }
}

fn spin_cmd(c: SpinCmd) -> Result<Output, CliError> {
    match c {
        SpinCmd::LiftPerm { perm } => {
            let sp: SignedPermutation = load(&perm)?;
            let x = lift_signed_permutation(&sp).map_err(invalid)?;
            Ok(Output::new(element_json(&x), format!("{} terms", x.len())))
        }
        SpinCmd::GolayLift => {
            let lift = golay_lift();
            let gens: Vec<Value> =
                lift.generators().iter().map(|w| json!({ "word": w, "epsilon": lift.epsilon(*w).expect("codeword") })).collect();
            let text = lift
                .generators()
                .iter()
                .map(|w| format!("{w}  {:+}", lift.epsilon(*w).expect("codeword")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!({ "generators": gens, "z": lift.z_word() }), text))
        }
        SpinCmd::CodeElement { word: w } => {
            let x = golay_lift().element(word(&w)?, Mode::Exact).map_err(invalid)?;
            Ok(Output::new(element_json(&x), format!("{x:?}")))
        }
        SpinCmd::CentralPair { element } => {
            let (x, zx) = central_pair(&load_element(&element)?).map_err(invalid)?;
            Ok(Output::new(json!([element_json(&x), element_json(&zx)]), format!("{x:?}\n{zx:?}")))
        }
    }
}

fn module_cmd(c: ModuleCmd) -> Result<Output, CliError> {
    match c {
        ModuleCmd::Act { element, vector } => {
            let v = act(&load_element(&element)?, &load_vector(&vector)?).map_err(invalid)?;
            Ok(Output::new(vector_json(&v), format!("{} nonzero entries", v.support().len())))
        }
        ModuleCmd::Chi { element } => {
            let c = chi_trace(&load_element(&element)?);
            Ok(Output::new(json!({ "trace": to_value(&ScalarJson::from_scalar(&c)), "text": c.to_string() }), c.to_string()))
        }
        ModuleCmd::Ground => {
            let v = SpinVector::ground(Mode::Exact);
            Ok(Output::new(vector_json(&v), "1_G"))
        }
    }
}

fn sc_cmd(c: ScCmd, seed: u64) -> Result<Output, CliError> {
    match c {
        ScCmd::Check { vector, tol } => {
            let r = sc_check(&load_vector(&vector)?, tol).map_err(invalid)?;
            let text = format!("unit: {}, failing words: {}", r.is_unit, r.failures.len());
            let mut j = to_value(&r);
            j["passes"] = json!(r.passes());
            Ok(Output::new(j, text).verdict(r.passes()))
        }
        ScCmd::Family { data } => {
            let d: FamilyData = load(&data)?;
            let f = sc_family(&d).map_err(invalid)?;
            let r = sc_check(&f.t, 1e-12).map_err(invalid)?;
            let j = json!({
                "vector": vector_json(&f.t),
                "gamma": f.gamma,
                "generators": f.generators,
                "orientationFlipped": f.orientation_flipped,
                "check": to_value(&r),
                "passes": r.passes(),
            });
            let text = format!("|Γ| = {}, superconformal: {}", f.gamma.len(), r.passes());
            Ok(Output::new(j, text).verdict(r.passes()))
        }
        ScCmd::Contract { vector, gamma, w, seeds, tol } => {
            let t = load_vector(&vector)?;
            let gens = gamma.iter().map(|s| word(s)).collect::<Result<Vec<_>, _>>()?;
            let cs = build_coset_system(&gens, word(&w)?, &seeds).map_err(invalid)?;
            let v = coset_contraction(&t, &cs, tol).map_err(invalid)?;
            let j = json!({ "value": to_value(&ScalarJson::from_scalar(&v)), "text": v.to_string(), "wInGamma": cs.w_in_gamma() });
            Ok(Output::new(j, format!("{v} (W in Γ: {})", cs.w_in_gamma())))
        }
        ScCmd::Ascend { vector, max_sweeps, restarts, tol } => {
            let t = load_vector(&vector)?.to_float();
            let params = AscentParams { tol, max_sweeps, restarts, seed };
            let r = orbit_ascent(&t, &params).map_err(invalid)?;
            let text = format!("f = {:.12} after {} sweeps, converged: {}", r.f, r.sweeps, r.converged);
            Ok(Output::new(to_value(&r), text).verdict(r.converged))
        }
        ScCmd::Random { rotations } => {
            let (w, v) = random_rotation_orbit(rotations, seed);
            Ok(Output::new(json!({ "word": w, "vector": vector_json(&v) }), format!("{} rotations", rotations)))
        }
    }
}

fn q_cmd(c: QCmd) -> Result<Output, CliError> {
    let s = match c {
        QCmd::Jtheta { terms } => jtheta(trunc_for(terms)).map_err(invalid)?,
        QCmd::JthetaTs { terms } => jtheta_at_one(trunc_for(terms)).map_err(invalid)?,
        QCmd::ThetaE8 { terms } => theta_e8(trunc_for(terms)),
        QCmd::E2 { terms } => eisenstein2_normalized(trunc_for(terms)),
        QCmd::EtaQuotient { shape, flavor, terms } => {
            let f: FrameShape = shape.parse().map_err(invalid)?;
            let flavor = match flavor {
                FlavorArg::Eta => Flavor::Eta,
                FlavorArg::Phi => Flavor::Phi,
            };
            eta_quotient(&f.parts, flavor, trunc_for(terms)).map_err(invalid)?
        }
    };
    Ok(series_output(&s))
}

fn mt_cmd(a: MtArgs) -> Result<Output, CliError> {
    let trunc = trunc_for(a.terms);
    if let Some(path) = a.matrix {
        let m = load::<MatrixJson>(&path)?.to_matrix().map_err(invalid)?;
        let g = frame_shape(&m).map_err(invalid)?;
        let minus_g = frame_shape(&m.neg()).map_err(invalid)?;
        let part = untwisted_part(&g, &minus_g, trunc).map_err(invalid)?;
        let text = format!("g: {g}\n-g: {minus_g}\nuntwisted: {part}");
        let j = json!({ "g": g, "minusG": minus_g, "untwisted": to_value(&part.to_json()), "text": part.to_string() });
        return Ok(Output::new(j, text));
    }
    let x = load_element(a.element.as_deref().expect("clap requires one input"))?;
    let (s, data) = mt_series(&x, trunc).map_err(invalid)?;
    let mut text = format!("g: {}\n-g: {}\nchi(x) = {}, chi(zx) = {}\n{}", data.g, data.minus_g, data.chi, data.chi_z, s);
    let mut j = json!({
        "g": data.g,
        "minusG": data.minus_g,
        "chi": data.chi,
        "chiZ": data.chi_z,
        "series": to_value(&s.to_json()),
        "text": s.to_string(),
    });
    let mut ok = true;
    if let Some(d) = a.oracle_degree {
        let max = half(&d)?;
        let oracle = mt_oracle(&x, max).map_err(invalid)?;
        let series = mt_series(&x, through(max.0 as i64 - 1, 2)).map_err(invalid)?.0;
        let bad = oracle_mismatches(&series, &oracle);
        ok = bad.is_empty();
        j["oracle"] = Value::Array(oracle.iter().map(|t| json!({ "degree": t.degree.to_string(), "trace": t.trace.to_string() })).collect());
        j["oracleMatches"] = json!(ok);
        let _ = write!(text, "\noracle through degree {max}: {}", if ok { "matches" } else { "MISMATCH" });
    }
    Ok(Output::new(j, text).verdict(ok))
}

fn fock_cmd(c: FockCmd) -> Result<Output, CliError> {
    match c {
        FockCmd::Dims { sector, max_degree } => {
            let max = half(&max_degree)?;
            let rows: Vec<(Half, usize)> = match sector {
                SectorArg::Both => census(max).map_err(invalid)?,
                SectorArg::Untwisted | SectorArg::Twisted => {
                    let sec = if matches!(sector, SectorArg::Untwisted) { Sector::Untwisted } else { Sector::Twisted };
                    (0..=max.0)
                        .map(|d| Ok((Half(d), enumerate_basis(sec, Half(d)).map_err(invalid)?.len())))
                        .collect::<Result<_, CliError>>()?
                }
            };
            let text = rows.iter().map(|(d, n)| format!("{:>5}  {n}", d.to_string())).collect::<Vec<_>>().join("\n");
            let j: Vec<Value> = rows.iter().map(|(d, n)| json!({ "degree": d.to_string(), "count": n })).collect();
            Ok(Output::new(Value::Array(j), text))
        }
        FockCmd::VirasoroCheck { max_degree, range } => {
            let r = virasoro_check(half(&max_degree)?, range).map_err(invalid)?;
            let text = format!("{} states, {} relations, {} failures", r.states, r.relations, r.failures.len());
            let mut j = to_value(&r);
            j["passes"] = json!(r.passes());
            Ok(Output::new(j, text).verdict(r.passes()))
        }
        FockCmd::Tproducts { vector } => {
            let p = t_products(&load_vector(&vector)?).map_err(invalid)?;
            let ok = p.is_superconformal();
            let j = json!({ "t2": fock_json(&p.t2), "t1": fock_json(&p.t1), "t0": fock_json(&p.t0), "superconformal": ok });
            let text = format!(
                "τ_2τ: {} terms\nτ_1τ: {} terms\nτ_0τ: {} terms\nsuperconformal: {ok}",
                p.t2.len(),
                p.t1.len(),
                p.t0.len()
            );
            Ok(Output::new(j, text).verdict(ok))
        }
        FockCmd::NsCheck { vector } => {
            let r = ns_check(&load_vector(&vector)?).map_err(invalid)?;
            let mut j = to_value(&r);
            j["passes"] = json!(r.passes());
            Ok(Output::new(j, format!("{} states, {} failures", r.states, r.failures.len())).verdict(r.passes()))
        }
        FockCmd::Killing { jacobi } => {
            let r = lie_algebra_checks(jacobi, 0).map_err(invalid)?;
            let ok = r.killing_vs_pairing_mismatches == 0 && r.antisymmetric && r.jacobi_failures == 0;
            let text = format!(
                "dim {}; κ(u,u) = {}, u_1u = {}·𝟏, |u|² = {}; κ vs pairing mismatches: {}",
                r.dim, r.sample_killing, r.sample_pairing, r.sample_norm, r.killing_vs_pairing_mismatches
            );
            Ok(Output::new(to_value(&r), text).verdict(ok))
        }
    }
}
