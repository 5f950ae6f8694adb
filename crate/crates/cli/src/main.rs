use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use nlfield::dirichlet::{read_series_csv, write_series_csv};
use nlfield::galois::{
    cyclotomic_trace_collapse, flow_phi, flow_psi, verify_nonlinear_automorphism,
};
use nlfield::hardy::{
    decay_ladder, eval_hyper, hardy_membership, in_positive_cone, l2_norm, torus_inner_product,
    write_ladder_csv,
};
use nlfield::json::FieldJson;
use nlfield::rational::format_rational;
use nlfield::sample::IndexShape;
use nlfield::signs::{grade, sign_of_with_cap};
use nlfield::{
    AlgebraElement, Automorphism, Coefficient, FlowParameter, GaloisGroup, GaussianRational,
    GroupFamily, HyperPoint, IntegerSeries, KInfinity, NumberField, Polynomial,
};
use nlfield_cli::expr::{algebra_to_source, element_to_source, parse_algebra, parse_element};
use nlfield_cli::session::Session;
use nlfield_cli::suites::{run_suite, Fixtures, SuiteConfig, DEFAULT_FIXTURES};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nlfield", version, about = "Field algebras over number fields")]
struct Cli {
    /// Bit cap for certified sign determination.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Session document to read named objects from and store results in.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Define and list number fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Field element arithmetic.
    #[command(subcommand)]
    Elem(ElemCmd),
    /// Field algebra products, traces and gradings.
    #[command(subcommand)]
    Alg(AlgCmd),
    #[command(subcommand)]
    Galois(GaloisCmd),
    /// Integer-indexed Dirichlet series from CSV.
    #[command(subcommand)]
    Dirichlet(DirichletCmd),
    #[command(subcommand)]
    Hardy(HardyCmd),
    /// Run a property suite: all, algebra, signs, hardy, galois, flows, dirichlet.
    Verify(VerifyArgs),
    #[command(subcommand)]
    Session(SessionCmd),
}

#[derive(Args, Clone)]
struct FieldArg {
    /// Session field name, `Q`, `quad:<n>`, `cyclo:<n>`, or minimal polynomial
    /// coefficients from the constant term up, comma separated.
    #[arg(long, short, default_value = "Q")]
    field: String,
}

#[derive(Args, Clone)]
struct SaveArg {
    /// Store the result in the session under this name.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum FieldCmd {
    New { name: String, spec: String },
    List,
}

#[derive(Subcommand)]
enum ElemCmd {
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        save: SaveArg,
    },
    Trace {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Minpoly {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Sign {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Cone {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    Cauchy {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        save: SaveArg,
    },
    Dirichlet {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        save: SaveArg,
    },
    Trace {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Grade {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Normalized representative of the projective class.
    Proj {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Subcommand)]
enum GaloisCmd {
    /// Build a group from `quadratic`, `cyclotomic:<n>`, or generator images.
    Group {
        /// Defaults to the quadratic or cyclotomic family the field belongs to.
        #[arg(long)]
        family: Option<String>,
        /// Generator images (expressions in `a`); overrides the family.
        #[arg(long = "image")]
        images: Vec<String>,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        save: SaveArg,
    },
    /// Check the automorphism `a -> image` against both products and the grading.
    Verify {
        #[arg(allow_hyphen_values = true)]
        image: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        field: FieldArg,
    },
    TraceCollapse {
        #[arg(long, default_value_t = 5)]
        kmax: u32,
    },
    /// Apply the flow with a rational parameter to an algebra element.
    Flow {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "phi")]
        kind: String,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Args)]
struct SeriesIo {
    /// Input CSV with header `n,re,im`.
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Floating-point coefficients instead of exact rationals.
    #[arg(long)]
    approx: bool,
}

#[derive(Subcommand)]
enum DirichletCmd {
    /// Dirichlet convolution of two series (`--in a.csv --in b.csv`).
    Conv(SeriesIo),
    Invert(SeriesIo),
    Mellin {
        #[command(flatten)]
        io: SeriesIo,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
}

#[derive(Subcommand)]
enum HardyCmd {
    /// Evaluate at height `t` above a boundary point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Boundary coordinates: real places, then (re, im) per complex place.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long)]
        t: f64,
        /// Also write the decay ladder at t = 1, 1/2, ..., 2^-10 to this CSV.
        #[arg(long)]
        ladder: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArg,
    },
    Norm {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Torus inner product of two character sums.
    Ortho {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long, value_delimiter = ',', default_value = "64")]
        grid: Vec<usize>,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long = "N", default_value_t = 10_000)]
    n: usize,
    /// Fixture document replacing the built-in one.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SessionCmd {
    /// Write the current session to a path.
    Save { path: PathBuf },
    /// Validate a session document and summarize it.
    Load { path: PathBuf },
}

/// Failure with an exit code: 1 for failed checks, 2 for bad input.
struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(2, e.to_string())
    }
}

struct Out {
    json: Value,
    text: String,
}

fn out(json: Value, text: impl Into<String>) -> Out {
    Out {
        json,
        text: text.into(),
    }
}

struct Ctx {
    precision: u32,
    seed: u64,
    session: Option<PathBuf>,
    state: Session,
    dirty: bool,
}

impl Ctx {
    fn field(&mut self, spec: &str) -> Result<(String, Arc<NumberField>), Fail> {
        if let Ok(k) = self.state.field(spec) {
            return Ok((spec.to_string(), k));
        }
        let k = parse_field_spec(spec)?;
        Ok((nlfield::json::field_id(&k), k))
    }

    fn store_field(&mut self, name: &str, k: &Arc<NumberField>) -> String {
        if self.state.fields.contains_key(name) {
            return name.to_string();
        }
        self.state.add_field(name, k);
        name.to_string()
    }

    fn algebra(&mut self, src: &str, k: &Arc<NumberField>) -> Result<AlgebraElement<GaussianRational>, Fail> {
        if let Ok(f) = self.state.algebra(src) {
            if **f.field() == **k {
                return Ok(f);
            }
        }
        Ok(parse_algebra(src, k)?)
    }

    fn element(&mut self, src: &str, k: &Arc<NumberField>) -> Result<nlfield::FieldElement, Fail> {
        if let Ok(x) = self.state.element(src) {
            if **x.field() == **k {
                return Ok(x);
            }
        }
        Ok(parse_element(src, k)?)
    }

    fn save_algebra(&mut self, save: &SaveArg, fname: &str, k: &Arc<NumberField>, f: &AlgebraElement<GaussianRational>) {
        if let Some(n) = &save.name {
            let fname = self.store_field(fname, k);
            self.state.add_algebra(n, &fname, f);
            self.dirty = true;
        }
    }
}

fn parse_field_spec(spec: &str) -> Result<Arc<NumberField>, Fail> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(NumberField::rationals());
    }
    if let Some(n) = s.strip_prefix("quad:") {
        return Ok(NumberField::quadratic(n.trim().parse()?)?);
    }
    if let Some(n) = s.strip_prefix("cyclo:") {
        return Ok(NumberField::cyclotomic(n.trim().parse()?)?);
    }
    let items: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    if items.len() < 2 {
        return Err(Fail(2, format!("unrecognized field {spec:?}")));
    }
    let doc = FieldJson {
        minpoly: items.clone(),
        signature: [0, 0],
    };
    match doc.to_field() {
        Ok(k) => Ok(k),
        Err(_) => Ok(NumberField::new(Polynomial::parse_coeffs(&items)?)?),
    }
}

fn gaussian_json(c: &GaussianRational) -> Value {
    json!({"re": format_rational(&c.re), "im": format_rational(&c.im)})
}

fn complex_json(c: Complex<f64>) -> Value {
    json!({"re": c.re, "im": c.im})
}

fn run_elem(ctx: &mut Ctx, cmd: ElemCmd) -> Result<Out, Fail> {
    match cmd {
        ElemCmd::Eval { expr, field, save } => {
            let (fname, k) = ctx.field(&field.field)?;
            let x = ctx.element(&expr, &k)?;
            if let Some(n) = &save.name {
                let fname = ctx.store_field(&fname, &k);
                ctx.state.add_element(n, &fname, &x);
                ctx.dirty = true;
            }
            let coords: Vec<String> = x.coords().iter().map(format_rational).collect();
            Ok(out(
                json!({"coords": coords, "expr": element_to_source(&x)}),
                format!("{x}"),
            ))
        }
        ElemCmd::Trace { expr, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let t = format_rational(&ctx.element(&expr, &k)?.trace());
            Ok(out(json!({"trace": t}), t))
        }
        ElemCmd::Minpoly { expr, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let p = ctx.element(&expr, &k)?.minimal_polynomial();
            Ok(out(json!({"minpoly": p.coeff_strings()}), p.to_string()))
        }
        ElemCmd::Sign { expr, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let v = sign_of_with_cap(&ctx.element(&expr, &k)?, ctx.precision)?;
            Ok(out(json!(v.to_strings()), v.to_string()))
        }
        ElemCmd::Cone { expr, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let b = in_positive_cone(&ctx.element(&expr, &k)?)?;
            Ok(out(json!({"positive_cone": b}), b.to_string()))
        }
    }
}

fn run_alg(ctx: &mut Ctx, cmd: AlgCmd) -> Result<Out, Fail> {
    let show = |f: &AlgebraElement<GaussianRational>| {
        out(
            serde_json::to_value(nlfield::json::AlgebraJson::from_algebra(f)).unwrap_or(Value::Null),
            algebra_to_source(f),
        )
    };
    match cmd {
        AlgCmd::Cauchy { f, g, field, save } => product(ctx, &f, &g, &field, &save, false),
        AlgCmd::Dirichlet { f, g, field, save } => product(ctx, &f, &g, &field, &save, true),
        AlgCmd::Trace { f, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let t = ctx.algebra(&f, &k)?.trace();
            Ok(out(gaussian_json(&t), format!("{t}")))
        }
        AlgCmd::Grade { f, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let g = grade(&ctx.algebra(&f, &k)?)?;
            let mut comps = serde_json::Map::new();
            let mut text = vec![format!("constant: {}", g.constant())];
            for (v, c) in g.components() {
                comps.insert(v.to_string(), json!(algebra_to_source(c)));
                text.push(format!("{v}: {}", algebra_to_source(c)));
            }
            Ok(out(
                json!({"constant": gaussian_json(g.constant()), "components": comps}),
                text.join("\n"),
            ))
        }
        AlgCmd::Proj { f, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let p = ctx.algebra(&f, &k)?.projectivize()?;
            Ok(show(p.representative()))
        }
    }
}

fn product(ctx: &mut Ctx, f: &str, g: &str, field: &FieldArg, save: &SaveArg, dirichlet: bool) -> Result<Out, Fail> {
    let (fname, k) = ctx.field(&field.field)?;
    let (a, b) = (ctx.algebra(f, &k)?, ctx.algebra(g, &k)?);
    let h = if dirichlet {
        a.dirichlet_product(&b)?
    } else {
        a.cauchy_product(&b)?
    };
    ctx.save_algebra(save, &fname, &k, &h);
    Ok(out(
        serde_json::to_value(nlfield::json::AlgebraJson::from_algebra(&h))?,
        algebra_to_source(&h),
    ))
}

fn parse_family(s: &str) -> Result<GroupFamily, Fail> {
    if s == "quadratic" {
        return Ok(GroupFamily::Quadratic);
    }
    if let Some(n) = s.strip_prefix("cyclotomic:") {
        return Ok(GroupFamily::Cyclotomic(n.trim().parse()?));
    }
    Err(Fail(2, format!("unknown family {s:?}; expected quadratic or cyclotomic:<n>")))
}

fn group_json(g: &GaloisGroup) -> (Value, String) {
    let images: Vec<String> = g.elements().iter().map(|s| element_to_source(s.image())).collect();
    let orders: Vec<usize> = g.elements().iter().map(Automorphism::order).collect();
    let text = format!(
        "order {}, exponent {}, abelian {}\nimages: {}",
        g.order(),
        g.exponent(),
        g.is_abelian(),
        images.join(", ")
    );
    (
        json!({
            "order": g.order(),
            "exponent": g.exponent(),
            "abelian": g.is_abelian(),
            "images": images,
            "element_orders": orders,
            "table": g.table(),
        }),
        text,
    )
}

fn run_galois(ctx: &mut Ctx, cmd: GaloisCmd) -> Result<Out, Fail> {
    match cmd {
        GaloisCmd::Group { family, images, field, save } => {
            let (fname, k) = ctx.field(&field.field)?;
            let fam = if !images.is_empty() {
                GroupFamily::Explicit(
                    images
                        .iter()
                        .map(|s| ctx.element(s, &k))
                        .collect::<Result<_, _>>()?,
                )
            } else if let Some(f) = &family {
                parse_family(f)?
            } else if k.degree() == 2 {
                GroupFamily::Quadratic
            } else if let Some(n) = nlfield::json::cyclotomic_index(k.minpoly()) {
                GroupFamily::Cyclotomic(n)
            } else {
                return Err(Fail(2, "no default family for this field; pass --family or --image".into()));
            };
            let g = GaloisGroup::from_family(&k, &fam)?;
            g.verify_table()?;
            if let Some(n) = &save.name {
                let fname = ctx.store_field(&fname, &k);
                ctx.state.add_group(n, &fname, &g);
                ctx.dirty = true;
            }
            let (j, t) = group_json(&g);
            Ok(out(j, t))
        }
        GaloisCmd::Verify { image, samples, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let sigma = Automorphism::new(&ctx.element(&image, &k)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let shape = IndexShape { height: 8, max_den: 2 };
            let rep = verify_nonlinear_automorphism(&sigma, samples, shape, &mut rng)?;
            let text = rep
                .checks
                .iter()
                .map(|c| format!("{}: {}", c.check, if c.pass() { "pass" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            let pass = rep.pass();
            let o = out(serde_json::to_value(&rep)?, text);
            if pass {
                Ok(o)
            } else {
                Err(Fail(1, o.json.to_string()))
            }
        }
        GaloisCmd::TraceCollapse { kmax } => {
            let rep = cyclotomic_trace_collapse(kmax)?;
            let text = rep
                .rows
                .iter()
                .map(|r| format!("k={} d={} trace image {}Z", r.k, r.degree, r.image_generator))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(out(serde_json::to_value(&rep)?, text))
        }
        GaloisCmd::Flow { f, kind, r, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let a = ctx.algebra(&f, &k)?.to_approx::<f64>();
            let r = FlowParameter::rational(&k, r);
            let h = match kind.as_str() {
                "phi" => flow_phi(&r, &a)?,
                "psi" => flow_psi(&r, &a)?,
                other => return Err(Fail(2, format!("unknown flow {other:?}; expected phi or psi"))),
            };
            let terms: Vec<Value> = h
                .terms()
                .map(|(i, c)| json!({"index": element_to_source(i), "re": c.re, "im": c.im}))
                .collect();
            let text = h
                .terms()
                .map(|(i, c)| format!("({c})*z^{{{}}}", element_to_source(i)))
                .collect::<Vec<_>>()
                .join(" + ");
            Ok(out(json!({"terms": terms}), text))
        }
    }
}

fn read_series<C: Coefficient>(path: &Path, n: Option<usize>) -> Result<IntegerSeries<C>, Fail> {
    let file = File::open(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    Ok(read_series_csv(BufReader::new(file), n)?)
}

fn emit_series<C: Coefficient>(s: &IntegerSeries<C>, path: &Option<PathBuf>) -> Result<Out, Fail> {
    let mut buf = Vec::new();
    write_series_csv(s, &mut buf)?;
    let nonzero = s.iter().filter(|(_, c)| !c.is_zero()).count();
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(|e| Fail(2, format!("{}: {e}", p.display())))?);
            w.write_all(&buf)?;
            w.flush()?;
            Ok(out(
                json!({"out": p.display().to_string(), "N": s.bound(), "nonzero": nonzero}),
                format!("wrote {} ({} nonzero of {})", p.display(), nonzero, s.bound()),
            ))
        }
        None => {
            let text = String::from_utf8(buf)?;
            Ok(out(json!({"csv": text, "N": s.bound()}), text.trim_end().to_string()))
        }
    }
}

fn dirichlet_generic<C: Coefficient>(cmd: DirichletCmd) -> Result<Out, Fail> {
    match cmd {
        DirichletCmd::Conv(io) => {
            if io.inputs.len() != 2 {
                return Err(Fail(2, "conv needs exactly two --in files".into()));
            }
            let n = io.n;
            let a: IntegerSeries<C> = read_series(&io.inputs[0], n)?;
            let b = read_series(&io.inputs[1], Some(a.bound()))?;
            emit_series(&a.dconv(&b)?, &io.out)
        }
        DirichletCmd::Invert(io) => {
            let a: IntegerSeries<C> = read_series(&io.inputs[0], io.n)?;
            emit_series(&a.dinvert()?, &io.out)
        }
        DirichletCmd::Mellin { io, y } => {
            let a: IntegerSeries<C> = read_series(&io.inputs[0], io.n)?;
            let v = a.mellin_eval(y);
            Ok(out(json!({"y": y, "value": complex_json(v)}), format!("{v}")))
        }
    }
}

fn run_dirichlet(cmd: DirichletCmd) -> Result<Out, Fail> {
    let approx = match &cmd {
        DirichletCmd::Conv(io) | DirichletCmd::Invert(io) | DirichletCmd::Mellin { io, .. } => io.approx,
    };
    if approx {
        dirichlet_generic::<Complex<f64>>(cmd)
    } else {
        dirichlet_generic::<GaussianRational>(cmd)
    }
}

fn boundary_point(k: &NumberField, x: &[f64]) -> Result<KInfinity<f64>, Fail> {
    let (r1, r2) = k.signature();
    if x.is_empty() {
        return Ok(KInfinity::zero((r1, r2)));
    }
    if x.len() != r1 + 2 * r2 {
        return Err(Fail(2, format!("--x needs {} values for signature ({r1}, {r2})", r1 + 2 * r2)));
    }
    let complex = x[r1..].chunks(2).map(|p| Complex::new(p[0], p[1])).collect();
    Ok(KInfinity::new(x[..r1].to_vec(), complex))
}

fn run_hardy(ctx: &mut Ctx, cmd: HardyCmd) -> Result<Out, Fail> {
    match cmd {
        HardyCmd::Eval { f, x, t, ladder, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let a = ctx.algebra(&f, &k)?;
            let xb = boundary_point(&k, &x)?;
            let r = eval_hyper(&a, &HyperPoint::above(&xb, t)?)?;
            let mut j = json!({
                "value": complex_json(r.value),
                "error_bound": r.error_bound,
                "in_hardy_space": hardy_membership(&a)?,
            });
            if let Some(path) = ladder {
                let ts: Vec<f64> = (0..=10).map(|e| 0.5f64.powi(e)).collect();
                let rows = decay_ladder(&a, &xb, &ts)?;
                let file = File::create(&path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
                write_ladder_csv(&rows, BufWriter::new(file))?;
                j["ladder"] = json!(path.display().to_string());
            }
            Ok(out(j, format!("{} (error bound {:e})", r.value, r.error_bound)))
        }
        HardyCmd::Norm { f, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let n = l2_norm(&ctx.algebra(&f, &k)?);
            Ok(out(json!({"l2_norm": n}), n.to_string()))
        }
        HardyCmd::Ortho { f, g, grid, field } => {
            let (_, k) = ctx.field(&field.field)?;
            let (a, b) = (ctx.algebra(&f, &k)?, ctx.algebra(&g, &k)?);
            let (r, rep) = torus_inner_product(&a, &b, &grid)?;
            Ok(out(serde_json::to_value(&rep)?, format!("{} (error bound {:e})", r.value, r.error_bound)))
        }
    }
}

fn run_verify(ctx: &Ctx, args: VerifyArgs) -> Result<Out, Fail> {
    let text = match &args.fixtures {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Fail(2, format!("{}: {e}", p.display())))?,
        None => DEFAULT_FIXTURES.to_string(),
    };
    let cfg = SuiteConfig {
        seed: ctx.seed,
        samples: args.samples,
        n: args.n,
        fixtures: Fixtures::parse(&text).map_err(|e| Fail(2, e))?,
    };
    let outcome = run_suite(&args.suite, &cfg).map_err(|e| Fail(2, e))?;
    for c in &outcome.checks {
        eprintln!(
            "{:<60} {} ({} samples, {} failures)",
            c.check,
            if c.pass() { "pass" } else { "FAIL" },
            c.samples,
            c.failures.len()
        );
    }
    let report = serde_json::to_string_pretty(&outcome)?;
    if outcome.pass {
        eprintln!("suite {}: pass", outcome.suite);
        Ok(out(serde_json::to_value(&outcome)?, report))
    } else {
        eprintln!("suite {}: FAIL", outcome.suite);
        Err(Fail(1, report))
    }
}

fn run(cli: Cli) -> Result<Out, Fail> {
    let state = match &cli.session {
        Some(p) if p.exists() => Session::load(p)?,
        _ => Session::default(),
    };
    let mut ctx = Ctx {
        precision: cli.precision,
        seed: cli.seed,
        session: cli.session.clone(),
        state,
        dirty: false,
    };
    let result = match cli.cmd {
        Cmd::Field(FieldCmd::New { name, spec }) => {
            let k = parse_field_spec(&spec)?;
            ctx.state.add_field(&name, &k);
            ctx.dirty = true;
            let doc = FieldJson::from_field(&k);
            let text = format!("{name}: {} signature {:?}", k.minpoly(), k.signature());
            Ok(out(serde_json::to_value(doc)?, text))
        }
        Cmd::Field(FieldCmd::List) => {
            let text = ctx
                .state
                .fields
                .iter()
                .map(|(n, f)| format!("{n}: [{}] signature {:?}", f.minpoly.join(", "), f.signature))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(out(serde_json::to_value(&ctx.state.fields)?, text))
        }
        Cmd::Elem(c) => run_elem(&mut ctx, c),
        Cmd::Alg(c) => run_alg(&mut ctx, c),
        Cmd::Galois(c) => run_galois(&mut ctx, c),
        Cmd::Dirichlet(c) => run_dirichlet(c),
        Cmd::Hardy(c) => run_hardy(&mut ctx, c),
        Cmd::Verify(a) => run_verify(&ctx, a),
        Cmd::Session(SessionCmd::Save { path }) => {
            ctx.state.save(&path)?;
            Ok(out(json!({"saved": path.display().to_string()}), format!("saved {}", path.display())))
        }
        Cmd::Session(SessionCmd::Load { path }) => {
            let s = Session::load(&path)?;
            let counts = json!({
                "fields": s.fields.len(),
                "elements": s.elements.len(),
                "algebra": s.algebra.len(),
                "groups": s.groups.len(),
            });
            let text = format!(
                "{} fields, {} elements, {} algebra elements, {} groups",
                s.fields.len(),
                s.elements.len(),
                s.algebra.len(),
                s.groups.len()
            );
            ctx.state = s;
            ctx.dirty = true;
            Ok(out(counts, text))
        }
    }?;
    if ctx.dirty {
        if let Some(p) = &ctx.session {
            ctx.state.save(p)?;
        }
    }
    Ok(result)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(o) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&o.json).unwrap_or_default());
            } else {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(Fail(code, msg)) => {
            if code == 1 {
                println!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
