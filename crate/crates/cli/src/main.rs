use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superstructure::algebra::{build_algebra, build_hamiltonian, AlgebraDesc, Series};
use superstructure::catalog::{ms0, msc, msv_h, msv_vect, shape_ambient, singular_overalgebra, WittShape};
use superstructure::grassmann::HSplit;
use superstructure::liestruct::{GradedSubalgebra, Lie};
use superstructure::parse::{eval, Context};
use superstructure::scalar::{Field, Fp, Rational};
use superstructure::suites::{run_suite, small_case_diagnostic, witness_suite, SUITES};
use superstructure::tables::{emit_row, table1_json, table1_text, table_json, table_text, TABLE1_AMBIENTS};
use superstructure::verify::{check_maximal, Report, Status, SweepConfig, Verdict};
use superstructure::Error;

type Q = Rational;

#[derive(Parser)]
#[command(name = "superstructure", version, about = "Vectorial Lie superalgebras and their maximal graded solvable subalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit text (the default)
    #[arg(long, global = true)]
    text: bool,
    /// Write the output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FieldArg {
    Q,
    F5,
    F7,
    F11,
}

impl FieldArg {
    fn prime(self) -> Option<u32> {
        match self {
            FieldArg::Q => None,
            FieldArg::F5 => Some(5),
            FieldArg::F7 => Some(7),
            FieldArg::F11 => Some(11),
        }
    }
}

#[derive(Args, Clone)]
struct Ambient {
    /// vect, svect, tilde_svect, po, h or h_prime
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Coordinate split `k,l` for po/h/h' (k xi-eta pairs, l zetas)
    #[arg(long)]
    split: Option<String>,
    #[arg(long, value_enum, default_value = "q")]
    field: FieldArg,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Kind {
    Ms0,
    Msc,
    #[value(name = "msV")]
    MsV,
}

#[derive(Args, Clone)]
struct SubalgSpec {
    #[arg(value_enum)]
    kind: Kind,
    #[command(flatten)]
    ambient: Ambient,
    /// dim V for msV in vect/svect/tilde_svect
    #[arg(long)]
    k: Option<usize>,
    /// Shape of V for msV in h/h', e.g. k=1,l=1,m=0,za=0,zb=1
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an ambient algebra and print its graded basis
    Build {
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Evaluate a bracket expression
    Eval {
        expr: String,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Construct a catalog subalgebra
    Subalg {
        #[command(flatten)]
        spec: SubalgSpec,
        /// Print the row in the layout of the stored tables
        #[arg(long)]
        emit_table: bool,
    },
    /// Run the maximality verifier on a catalog subalgebra
    Check {
        #[command(flatten)]
        spec: SubalgSpec,
        /// Read the subalgebra from a JSON file instead of building it
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        /// Largest quotient dimension swept exhaustively
        #[arg(long, default_value_t = 8)]
        cap: usize,
        /// Cross-check exact results with F_p sweeps
        #[arg(long)]
        full_sweep: bool,
        /// Expected status; the exit code is 1 when the verdict differs
        #[arg(long, value_enum, default_value = "maximal")]
        expect: Expect,
    },
    /// Print a stored table (1-5, or all)
    Tables {
        #[arg(default_value = "all")]
        which: String,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Run a verification suite
    Suite {
        /// prop1..prop5, properties, containment, controls, fingerprints, or witness
        name: String,
        /// Case id for the witness suite, e.g. prop3/svect/3/1
        #[arg(long)]
        case: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Expect {
    Maximal,
    NotMaximal,
    Any,
}

/// Output text or JSON plus the exit status.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(j) = std::env::var("SUPERSTRUCTURE_JOBS") {
        match j.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: SUPERSTRUCTURE_JOBS must be a positive integer, got `{j}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli.command) {
        Ok(o) => {
            let body = if cli.out.json {
                let mut s = serde_json::to_string_pretty(&o.json).expect("json");
                s.push('\n');
                s
            } else {
                o.text
            };
            if let Err(e) = emit(&cli.out.out, &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Error>().map_or(true, |e| {
                !matches!(e, Error::Internal(_) | Error::NotClosed(_) | Error::NotContained(_))
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cmd: &Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Build { ambient } => build(ambient),
        Command::Eval { expr, ambient } => eval_cmd(expr, ambient),
        Command::Subalg { spec, emit_table } => subalg(spec, *emit_table),
        Command::Check {
            spec,
            input,
            cap,
            full_sweep,
            expect,
        } => check(spec, input.as_ref(), *cap, *full_sweep, *expect),
        Command::Tables { which, ambient } => tables(which, ambient),
        Command::Suite { name, case } => suite(name, case.as_deref()),
    }
}

fn series_of(a: &Ambient) -> anyhow::Result<Series> {
    let s = a.series.as_deref().ok_or_else(|| anyhow!(Error::Inadmissible("--series is required".into())))?;
    Ok(s.parse()?)
}

fn n_of(a: &Ambient) -> anyhow::Result<usize> {
    a.n.ok_or_else(|| anyhow!(Error::Inadmissible("--n is required".into())))
}

fn parse_split(s: &str) -> anyhow::Result<HSplit> {
    let (k, l) = s
        .split_once(',')
        .ok_or_else(|| Error::Shape(format!("--split expects `k,l`, got `{s}`")))?;
    let k = k.trim().parse().map_err(|_| Error::Shape(format!("bad k in `{s}`")))?;
    let l = l.trim().parse().map_err(|_| Error::Shape(format!("bad l in `{s}`")))?;
    Ok(HSplit::new(k, l))
}

fn desc_of(a: &Ambient) -> anyhow::Result<AlgebraDesc> {
    let series = series_of(a)?;
    match &a.split {
        Some(sp) => {
            let split = parse_split(sp)?;
            if let Some(n) = a.n {
                if n != split.n() {
                    return Err(Error::Inadmissible(format!("--split {sp} has n = {}, not {n}", split.n())).into());
                }
            }
            Ok(build_hamiltonian(series, split)?)
        }
        None => Ok(build_algebra(series, n_of(a)?)?),
    }
}

fn build(a: &Ambient) -> anyhow::Result<Outcome> {
    let desc = desc_of(a)?;
    let field = a.field.prime().map_or("q".to_string(), |p| format!("f{p}"));
    let mut text = format!("{} over {field}\n", desc.name());
    let mut comps = Vec::new();
    let (mut even, mut odd) = (0, 0);
    for (d, dim) in desc.component_dims() {
        let basis: Vec<String> = (0..dim).map(|i| desc.basis_element(d, i).render(&desc.names())).collect();
        if desc.parity(d) == 0 {
            even += dim;
        } else {
            odd += dim;
        }
        text.push_str(&format!("  degree {d:>2} (dim {dim}): {}\n", basis.join(", ")));
        comps.push(json!({"degree": d, "dim": dim, "parity": desc.parity(d), "basis": basis}));
    }
    text.push_str(&format!("  superdimension ({even}|{odd}), total {}\n", desc.dim()));
    let mut j = json!({
        "algebra": desc.name(),
        "series": desc.series().label(),
        "n": desc.n(),
        "field": field,
        "superdim": [even, odd],
        "components": comps,
    });
    if let Some(s) = desc.split() {
        j["split"] = json!({"k": s.k, "l": s.l});
    }
    Ok(Outcome { text, json: j, ok: true })
}

/// Largest variable index in an expression, for evaluation without an ambient.
fn max_index(src: &str) -> usize {
    let chars: Vec<char> = src.chars().collect();
    let mut best = 1;
    let mut i = 0;
    while i < chars.len() {
        if matches!(chars[i], 'x' | 'e' | 'z' | 'd') && (i == 0 || !chars[i - 1].is_ascii_alphabetic()) {
            let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(v) = digits.parse::<usize>() {
                best = best.max(v);
            }
        }
        i += 1;
    }
    best
}

fn reduce_render<const P: u32>(
    v: &superstructure::parse::Value,
    names: &superstructure::grassmann::VarNames,
) -> anyhow::Result<String> {
    use superstructure::parse::Value as V;
    let bad = std::cell::Cell::new(false);
    let conv = |c: &Q| {
        Fp::<P>::from_rational(c).unwrap_or_else(|| {
            bad.set(true);
            Fp::<P>::zero()
        })
    };
    let out = match v {
        V::Function(f) => f.map_field(conv).render(names),
        V::Field(x) => x.map_field(conv).render(names),
    };
    if bad.get() {
        return Err(Error::Field(format!("a coefficient has a denominator divisible by {P}")).into());
    }
    Ok(out)
}

fn eval_cmd(expr: &str, a: &Ambient) -> anyhow::Result<Outcome> {
    let desc = if a.series.is_some() { Some(desc_of(a)?) } else { None };
    let ctx = match &desc {
        Some(d) => Context::for_algebra(d),
        None => Context::plain(a.n.unwrap_or_else(|| max_index(expr))),
    };
    let v = eval(expr, &ctx)?;
    let rendered = match a.field.prime() {
        None => v.render(&ctx.names),
        Some(5) => reduce_render::<5>(&v, &ctx.names)?,
        Some(7) => reduce_render::<7>(&v, &ctx.names)?,
        Some(p) => {
            debug_assert_eq!(p, 11);
            reduce_render::<11>(&v, &ctx.names)?
        }
    };
    Ok(Outcome {
        text: format!("{rendered}\n"),
        json: json!({"expr": expr, "value": rendered}),
        ok: true,
    })
}

/// The requested subalgebra, its label and any containment diagnostic.
fn construct(spec: &SubalgSpec) -> anyhow::Result<(String, GradedSubalgebra<Q>, Option<String>)> {
    let a = &spec.ambient;
    let series = series_of(a)?;
    if spec.kind == Kind::MsV && series.is_hamiltonian() {
        let src = spec
            .shape
            .as_deref()
            .ok_or_else(|| Error::Shape("msV in a Hamiltonian series needs --shape".into()))?;
        let shape: WittShape = src.parse()?;
        let n = a.n.unwrap_or(shape.n());
        shape.validate(n)?;
        let lie = shape_ambient(series, &shape)?;
        let s = msv_h(&lie, &shape)?;
        let mut note = None;
        if shape.is_singular() {
            let (label, over) = singular_overalgebra(&lie, &shape, &s)?;
            note = Some(format!(
                "not maximal: V is singular and msV {:?} lies in the solvable {label} {:?}",
                s.dims_trimmed(),
                over.dims_trimmed()
            ));
        }
        let note = note.or_else(|| small_note(&s));
        return Ok((format!("msV {shape}"), s, note));
    }
    let desc = desc_of(a)?;
    let lie: Arc<Lie<Q>> = Lie::from_desc(desc);
    let (name, s) = match spec.kind {
        Kind::Ms0 => ("ms0".to_string(), ms0(&lie)?),
        Kind::Msc => ("msc".to_string(), msc(&lie)?),
        Kind::MsV => {
            let k = spec.k.ok_or_else(|| Error::Inadmissible("msV needs --k".into()))?;
            ("msV".to_string(), msv_vect(&lie, k)?)
        }
    };
    let note = small_note(&s);
    Ok((name, s, note))
}

/// Diagnostics for the small ambients where catalog outputs need not be maximal.
fn small_note(s: &GradedSubalgebra<Q>) -> Option<String> {
    let desc = s.desc();
    let small = match desc.series() {
        Series::Vect | Series::Svect => desc.n() <= 2,
        Series::H | Series::HPrime | Series::Po => desc.n() <= 4,
        Series::TildeSvect => false,
    };
    if !small {
        return None;
    }
    if let Some(d) = small_case_diagnostic(s) {
        return Some(d);
    }
    let v = check_maximal(s, None, &SweepConfig::default()).ok()?;
    let w = v.witnesses.first()?;
    Some(format!(
        "not maximal: adjoining {} (degree {}) gives a solvable subalgebra with dims {:?}",
        w.extension,
        w.degree,
        w.over_algebra_dims.iter().filter(|d| d.1 > 0).map(|d| d.1).collect::<Vec<_>>()
    ))
}

fn reduced<const P: u32>(s: &GradedSubalgebra<Q>) -> anyhow::Result<(String, Value)> {
    let lie: Arc<Lie<Fp<P>>> = Lie::new(s.lie().desc_arc());
    let t = s.map_to(&lie)?;
    Ok((t.to_text(), t.to_json()))
}

fn subalg(spec: &SubalgSpec, emit_table: bool) -> anyhow::Result<Outcome> {
    let (name, s, note) = construct(spec)?;
    if let Some(n) = &note {
        eprintln!("note: {n}");
    }
    let (body, mut j) = match spec.ambient.field.prime() {
        None => (s.to_text(), s.to_json()),
        Some(5) => reduced::<5>(&s)?,
        Some(7) => reduced::<7>(&s)?,
        Some(_) => reduced::<11>(&s)?,
    };
    let text = if emit_table { emit_row(name.split(' ').next().unwrap_or(&name), &s) } else { body };
    j["name"] = json!(name);
    if let Some(n) = note {
        j["diagnostic"] = json!(n);
    }
    Ok(Outcome { text, json: j, ok: true })
}

fn verdict_text(name: &str, s: &GradedSubalgebra<Q>, v: &Verdict) -> String {
    let mut t = format!("{name} in {}: dims {:?}\n", s.desc().name(), s.dims_trimmed());
    t.push_str(&format!("status: {}\n", serde_json::to_value(v.status).unwrap().as_str().unwrap_or("")));
    for d in &v.method_by_degree {
        t.push_str(&format!(
            "  degree {:>2}: quotient {}, {}, {} exact candidates, {} sweep points, {} modular artifacts\n",
            d.degree, d.quotient_dim, d.method, d.exact_candidates, d.sweep_points, d.modular_artifacts
        ));
    }
    for w in &v.witnesses {
        t.push_str(&format!(
            "  witness: adjoining {} (degree {}) gives a solvable subalgebra with dims {:?}\n",
            w.extension,
            w.degree,
            w.over_algebra_dims.iter().filter(|d| d.1 > 0).map(|d| d.1).collect::<Vec<_>>()
        ));
    }
    t.push_str(&format!("  {} candidates checked\n", v.candidates_checked));
    t
}

fn check(
    spec: &SubalgSpec,
    input: Option<&PathBuf>,
    cap: usize,
    full_sweep: bool,
    expect: Expect,
) -> anyhow::Result<Outcome> {
    let (name, s) = match input {
        Some(path) => {
            let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let v: Value = serde_json::from_str(&src).map_err(|e| Error::Parse {
                pos: e.column(),
                msg: e.to_string(),
            })?;
            let lie: Arc<Lie<Q>> = match (&spec.shape, series_of(&spec.ambient)?) {
                (Some(sh), series) if series.is_hamiltonian() => shape_ambient(series, &sh.parse()?)?,
                _ => Lie::from_desc(desc_of(&spec.ambient)?),
            };
            (path.display().to_string(), GradedSubalgebra::from_json(&lie, &v)?)
        }
        None => {
            let (name, s, _) = construct(spec)?;
            (name, s)
        }
    };
    let mut cfg = SweepConfig {
        cap,
        full_sweep,
        ..SweepConfig::default()
    };
    if let Some(p) = spec.ambient.field.prime() {
        cfg.primes = vec![p];
    }
    let v = check_maximal(&s, None, &cfg)?;
    let ok = match expect {
        Expect::Maximal => v.status == Status::Maximal,
        Expect::NotMaximal => v.status == Status::NotMaximal,
        Expect::Any => true,
    };
    Ok(Outcome {
        text: verdict_text(&name, &s, &v),
        json: json!({"name": name, "algebra": s.desc().name(), "dims": s.dims(), "verdict": v}),
        ok,
    })
}

fn tables(which: &str, a: &Ambient) -> anyhow::Result<Outcome> {
    let ambients: Vec<(Series, usize)> = match (&a.series, a.n) {
        (Some(_), Some(n)) => vec![(series_of(a)?, n)],
        _ => TABLE1_AMBIENTS.to_vec(),
    };
    let list: Vec<u8> = match which {
        "all" => (1..=5).collect(),
        t => vec![t
            .parse::<u8>()
            .ok()
            .filter(|t| (1..=5).contains(t))
            .ok_or_else(|| Error::UnknownCase(format!("table `{t}` (expected 1-5 or all)")))?],
    };
    let mut text = String::new();
    let mut js = Vec::new();
    for t in list {
        if !text.is_empty() {
            text.push('\n');
        }
        text.push_str(&format!("Table {t}\n"));
        if t == 1 {
            text.push_str(&table1_text(&ambients)?);
            js.push(table1_json(&ambients)?);
        } else {
            text.push_str(&table_text(t)?);
            js.push(table_json(t)?);
        }
    }
    let json = if js.len() == 1 { js.pop().unwrap() } else { json!(js) };
    Ok(Outcome { text, json, ok: true })
}

fn suite(name: &str, case: Option<&str>) -> anyhow::Result<Outcome> {
    let rep: Report = if name == "witness" {
        let case = case.ok_or_else(|| Error::UnknownCase("the witness suite needs --case".into()))?;
        witness_suite(case)?
    } else {
        if !SUITES.contains(&name) {
            return Err(Error::UnknownCase(format!("suite `{name}` (expected one of {}, witness)", SUITES.join(", "))).into());
        }
        run_suite(name)?
    };
    Ok(Outcome {
        text: rep.to_text(),
        json: serde_json::to_value(&rep)?,
        ok: rep.ok(),
    })
}
