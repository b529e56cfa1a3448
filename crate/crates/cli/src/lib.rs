//! The `skein` command line, as a library so tests can drive it in-process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use skein_core::dsl::json::{report, tensor_report, tensor_to_json};
use skein_core::dsl::{self, parse_assignment, render, render_system, DslError, Scope, Workspace};
use skein_core::frobenius::{basis_tuples, FrobeniusSystem, TensorElem};
use skein_core::pattern::state_sum;
use skein_core::skein::{compose, normal_form, skein_equal, SkeinElement, SurfaceCombination};
use skein_core::tqft::{apply_word, word_to_map, word_to_surface};

#[derive(Parser, Debug)]
#[command(name = "skein", version, about = "Evaluate colored cobordisms, skein normal forms and pattern state sums")]
struct Cli {
    /// Emit results as JSON (schema 1)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify every algebra in a file
    Check { file: PathBuf },
    /// Evaluate a word on an input tensor, or print its matrix
    EvalWord {
        file: PathBuf,
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        input: Option<String>,
    },
    /// Normal form of a surface, combination or word
    NormalForm { file: PathBuf, name: String },
    /// Value of a closed surface or combination
    ClosedEval { file: PathBuf, name: String },
    /// Normal form of `g ∘ f` (f first)
    Compose { file: PathBuf, g: String, f: String },
    /// Exit 0 iff two items are skein-equal
    Equal { file: PathBuf, a: String, b: String },
    /// State sum of a pattern
    Statesum { file: PathBuf, pattern: String },
    /// Dual basis with respect to the counit pairing
    DualBasis { file: PathBuf, algebra: String },
    /// Twist an algebra by an invertible element
    Twist {
        file: PathBuf,
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Change coefficients along `name=value,...`
    Specialize {
        file: PathBuf,
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        assignment: String,
        /// Target ground ring, e.g. `Z[1/2][t]`; inferred when omitted
        #[arg(long)]
        ground: Option<String>,
    },
    /// Invariants of an algebra: rank, handle, Gram determinant, ...
    Info { file: PathBuf, algebra: String },
    /// Print a file in canonical form
    Fmt { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the command line with `args` (program name first).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let file = cli.command.file().clone();
    match execute(&cli) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(Failure::Dsl(DslError::Parse(diags))) => {
            let mut stderr = String::new();
            for d in diags {
                writeln!(stderr, "{}:{d}", file.display()).unwrap();
            }
            Output { code: 2, stdout: String::new(), stderr }
        }
        Err(Failure::Dsl(DslError::Domain(msg))) => {
            Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Io(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Check { file }
            | Command::EvalWord { file, .. }
            | Command::NormalForm { file, .. }
            | Command::ClosedEval { file, .. }
            | Command::Compose { file, .. }
            | Command::Equal { file, .. }
            | Command::Statesum { file, .. }
            | Command::DualBasis { file, .. }
            | Command::Twist { file, .. }
            | Command::Specialize { file, .. }
            | Command::Info { file, .. }
            | Command::Fmt { file } => file,
        }
    }
}

enum Failure {
    Dsl(DslError),
    Io(String),
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure::Dsl(e)
    }
}

fn domain(msg: impl std::fmt::Display) -> Failure {
    Failure::Dsl(DslError::domain(msg))
}

fn emit(v: Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
}

/// An item as a skein element: words are compiled to surfaces first.
fn skein_element(ws: &Workspace, name: &str) -> Result<(Arc<FrobeniusSystem>, SkeinElement), Failure> {
    if let Ok((sys, w)) = ws.word(name) {
        let c = word_to_surface(&sys, w).map_err(domain)?;
        let nf = normal_form(&sys, &SurfaceCombination::single(c, sys.ring_one()));
        return Ok((sys, nf));
    }
    let (sys, c) = ws.combination(name).map_err(|e| match ws.get(name) {
        Ok(entry) if entry.system.is_ok() => domain(format!("`{name}` is not a word, surface or combination")),
        _ => Failure::Dsl(e),
    })?;
    let nf = normal_form(&sys, &c);
    Ok((sys, nf))
}

fn same_algebra(a: &FrobeniusSystem, b: &FrobeniusSystem, x: &str, y: &str) -> Result<(), Failure> {
    if a != b {
        return Err(domain(format!("`{x}` and `{y}` live over different algebras")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let path = cli.command.file();
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    if let Command::Fmt { .. } = cli.command {
        let doc = dsl::parse_bytes(&bytes).map_err(DslError::Parse)?;
        return Ok((0, render(&doc)));
    }
    let ws = dsl::load(&bytes)?;
    let json = cli.json;
    let mut out = String::new();
    let code = match &cli.command {
        Command::Check { .. } => {
            let mut results = Vec::new();
            let mut failed = false;
            for (name, entry) in ws.entries() {
                if !matches!(entry.value, Some(dsl::Value::Algebra) | None) || entry.algebra != *name {
                    continue;
                }
                match &entry.system {
                    Ok(_) => {
                        writeln!(out, "{name}: ok").unwrap();
                        results.push(json!({ "name": name, "ok": true }));
                    }
                    Err(e) => {
                        failed = true;
                        writeln!(out, "{name}: {e}").unwrap();
                        results.push(json!({ "name": name, "ok": false, "error": e.to_string() }));
                    }
                }
            }
            if json {
                let mut m = report("check", "");
                m.remove("algebra");
                m.insert("algebras".into(), json!(results));
                out = emit(Value::Object(m));
            }
            i32::from(failed)
        }
        Command::EvalWord { word, input, .. } => {
            let (sys, w) = ws.word(word)?;
            match input {
                Some(text) => {
                    let e = dsl::parse_expr(text).map_err(|d| DslError::Parse(vec![d]))?;
                    let x = Scope::of(&sys).eval_arity(&e, w.input_width()).map_err(|d| DslError::Parse(vec![d]))?;
                    let y = apply_word(&sys, w, &x).map_err(domain)?;
                    out = if json {
                        emit(tensor_report("eval-word", &sys, (w.input_width(), w.output_width()), None, &y))
                    } else {
                        format!("{}\n", sys.fmt_tensor(&y))
                    };
                }
                None => {
                    let map = word_to_map(&sys, w).map_err(domain)?;
                    let mut columns = Vec::new();
                    for (k, slots) in basis_tuples(sys.rank(), w.input_width()).enumerate() {
                        let mut source = TensorElem::zero(slots.len());
                        source.add_term(slots.clone(), sys.ring_one());
                        let image = &map.columns()[k];
                        if json {
                            columns.push(json!({ "input": tensor_to_json(&sys, &source), "output": tensor_to_json(&sys, image) }));
                        } else {
                            writeln!(out, "{} |-> {}", sys.fmt_tensor(&source), sys.fmt_tensor(image)).unwrap();
                        }
                    }
                    if json {
                        let mut m = report("matrix", sys.name());
                        m.insert("signature".into(), json!([w.input_width(), w.output_width()]));
                        m.insert("columns".into(), json!(columns));
                        out = emit(Value::Object(m));
                    }
                }
            }
            0
        }
        Command::NormalForm { name, .. } => {
            let (sys, nf) = skein_element(&ws, name)?;
            out = if json {
                emit(tensor_report("normal-form", &sys, nf.signature(), None, nf.tensor()))
            } else {
                format!("{}\n", sys.fmt_tensor(nf.tensor()))
            };
            0
        }
        Command::ClosedEval { name, .. } => {
            let (sys, nf) = skein_element(&ws, name)?;
            if nf.signature() != (0, 0) {
                let (r, s) = nf.signature();
                return Err(domain(format!("`{name}` has boundary ({r}, {s}); closed-eval needs a closed surface")));
            }
            out = if json {
                emit(tensor_report("closed-eval", &sys, (0, 0), None, nf.tensor()))
            } else {
                format!("{}\n", sys.fmt_tensor(nf.tensor()))
            };
            0
        }
        Command::Compose { g, f, .. } => {
            let (sys_g, ng) = skein_element(&ws, g)?;
            let (sys_f, nf) = skein_element(&ws, f)?;
            same_algebra(&sys_g, &sys_f, g, f)?;
            let c = compose(&sys_g, &ng, &nf).map_err(domain)?;
            out = if json {
                emit(tensor_report("compose", &sys_g, c.signature(), None, c.tensor()))
            } else {
                format!("{}\n", sys_g.fmt_tensor(c.tensor()))
            };
            0
        }
        Command::Equal { a, b, .. } => {
            let (sys_a, ca) = ws.combination(a).or_else(|_| word_combination(&ws, a))?;
            let (sys_b, cb) = ws.combination(b).or_else(|_| word_combination(&ws, b))?;
            same_algebra(&sys_a, &sys_b, a, b)?;
            let equal = skein_equal(&sys_a, &ca, &cb).map_err(domain)?;
            out = if json {
                let mut m = report("equal", sys_a.name());
                m.insert("equal".into(), json!(equal));
                emit(Value::Object(m))
            } else {
                format!("{}\n", if equal { "equal" } else { "not equal" })
            };
            i32::from(!equal)
        }
        Command::Statesum { pattern, .. } => {
            let (sys, p) = ws.pattern(pattern)?;
            let result = state_sum(&sys, p).map_err(domain)?;
            out = if json {
                emit(tensor_report("statesum", &sys, (0, result.symbols.len()), Some(&result.symbols), &result.terms))
            } else {
                format!("[{}] {}\n", result.symbols.join(", "), sys.fmt_tensor(&result.terms))
            };
            0
        }
        Command::DualBasis { algebra, .. } => {
            let sys = ws.system(algebra)?;
            let dual = sys.dual_basis().map_err(domain)?;
            if json {
                let entries: Vec<Value> = dual
                    .iter()
                    .enumerate()
                    .map(|(i, w)| json!({ "basis": sys.basis_names()[i], "dual": tensor_to_json(&sys, &TensorElem::from_alg(w)) }))
                    .collect();
                let mut m = report("dual-basis", sys.name());
                m.insert("elements".into(), json!(entries));
                out = emit(Value::Object(m));
            } else {
                for (i, w) in dual.iter().enumerate() {
                    writeln!(out, "{} -> {}", sys.basis_names()[i], sys.fmt_alg(w)).unwrap();
                }
            }
            0
        }
        Command::Twist { algebra, element, .. } => {
            let sys = ws.system(algebra)?;
            let e = dsl::parse_expr(element).map_err(|d| DslError::Parse(vec![d]))?;
            let y = Scope::of(&sys).eval_alg(&e).map_err(|d| DslError::Parse(vec![d]))?;
            let twisted = sys.twist(&y).map_err(domain)?;
            out = algebra_output(json, "twist", &twisted, &format!("{}_twisted", ident(algebra)));
            0
        }
        Command::Specialize { algebra, assignment, ground, .. } => {
            let sys = ws.system(algebra)?;
            let a = parse_assignment(sys.ring(), assignment, ground.as_deref())?;
            let (special, _) = sys.specialize(&a).map_err(domain)?;
            out = algebra_output(json, "specialize", &special, &format!("{}_special", ident(algebra)));
            0
        }
        Command::Info { algebra, .. } => {
            let sys = ws.system(algebra)?;
            let det = sys.gram_matrix().determinant();
            let degrees = sys.operator_degrees().ok();
            let show = |d: Option<i64>| d.map_or("inhomogeneous".to_string(), |d| d.to_string());
            if json {
                let mut m = report("info", sys.name());
                m.insert("ring".into(), json!(sys.ring().to_string()));
                m.insert("basis".into(), json!(sys.basis_names()));
                m.insert("handle".into(), json!(sys.fmt_alg(sys.handle())));
                m.insert("rank_invariant".into(), json!(sys.rank_invariant().to_string()));
                m.insert("gram_determinant".into(), json!(det.to_string()));
                m.insert("geometric".into(), json!(sys.geometric_check()));
                if let Some(d) = degrees {
                    m.insert(
                        "degrees".into(),
                        json!({ "product": d.product, "counit": d.counit, "coproduct": d.coproduct }),
                    );
                }
                out = emit(Value::Object(m));
            } else {
                writeln!(out, "ring: {}", sys.ring()).unwrap();
                writeln!(out, "basis: {}", sys.basis_names().join(", ")).unwrap();
                writeln!(out, "handle: {}", sys.fmt_alg(sys.handle())).unwrap();
                writeln!(out, "rank invariant: {}", sys.rank_invariant()).unwrap();
                writeln!(out, "gram determinant: {det}").unwrap();
                writeln!(out, "geometric: {}", sys.geometric_check()).unwrap();
                if let Some(d) = degrees {
                    writeln!(
                        out,
                        "degrees: product {}, counit {}, coproduct {}",
                        show(d.product),
                        show(d.counit),
                        show(d.coproduct)
                    )
                    .unwrap();
                }
            }
            0
        }
        Command::Fmt { .. } => unreachable!("handled before elaboration"),
    };
    Ok((code, out))
}

fn word_combination(ws: &Workspace, name: &str) -> Result<(Arc<FrobeniusSystem>, SurfaceCombination), Failure> {
    let (sys, w) = ws.word(name).map_err(|_| domain(format!("`{name}` is not a word, surface or combination")))?;
    let c = word_to_surface(&sys, w).map_err(domain)?;
    let one = sys.ring_one();
    Ok((sys, SurfaceCombination::single(c, one)))
}

/// `group Z/2` and similar built-in names are not identifiers.
fn ident(name: &str) -> String {
    let s: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let s = s.split('_').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("_");
    if s.starts_with(|c: char| c.is_ascii_digit()) {
        format!("A{s}")
    } else {
        s
    }
}

fn algebra_output(json: bool, result: &str, sys: &FrobeniusSystem, name: &str) -> String {
    let text = render_system(sys, name);
    if json {
        let mut m = report(result, name);
        m.insert("text".into(), json!(text));
        emit(Value::Object(m))
    } else {
        text
    }
}
