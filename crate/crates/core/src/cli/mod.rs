//! Command-line front end: argument parsing, file loading, the Gröbner
//! cache and versioned JSON reports.

pub mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::io::{algebra_from_json, morphism_from_file, AlgebraFile, MorphismFile};
use crate::algebra::{enumerate_hom_with, point_coordinates_with, polynomial_extension, Algebra, AlgebraMorphism};
use crate::derham::{derham_h0, integration_homotopy_check, integration_samples};
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_search_with, homotopy_verify, p0p1_invariance_harness, Hook, SearchBounds, SearchOutcome};
use crate::mapspace::{directsum_law, exponential_law, points_crosscheck, tensor_law, uniform_mapspace, LawReport};
use crate::matrix::{lemma_suite, LemmaGroup};
use crate::par::Exec;
use crate::pi0::{pi0_routes, Route};
use crate::poly::polynomial::format_monomial;
use crate::poly::{in_span, same_span, Guards, Polynomial};
use crate::simplicial::{moore_complex, sing_h0};

use cache::{sha256_hex, CacheStatus, GbCache};

#[derive(Parser, Debug)]
#[command(name = "affpi0", version, about = "Exact path components, map spaces and homotopies of affine algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Ignore AFFPI0_CACHE for this run.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Gröbner cache directory (overrides AFFPI0_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Run enumerations on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gröbner bases, normal forms and points of a presentation.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Morphism validation and bounded enumeration.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Truncated map-space presentations.
    #[command(subcommand)]
    Map(MapCmd),
    /// Elementary homotopies.
    #[command(subcommand)]
    Homotopy(HomotopyCmd),
    /// Path components by the de Rham, equalizer and idempotent routes.
    Pi0 {
        file: PathBuf,
        /// derham, equalizer, idempotent or all.
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, default_value_t = 2)]
        deg: u32,
        #[arg(long, default_value_t = 2)]
        tower: u32,
    },
    /// Degree-zero de Rham cohomology and the integration homotopy.
    #[command(subcommand)]
    Derham(DerhamCmd),
    /// The cosimplicial algebra of maps into the standard simplices.
    #[command(subcommand)]
    Sing(SingCmd),
    /// Matrix lemmas and natural isomorphism laws.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    Gb { file: PathBuf },
    Nf {
        file: PathBuf,
        #[arg(long = "elem", required = true)]
        elems: Vec<String>,
    },
    Points { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum HomCmd {
    Check { morphism: PathBuf },
    Enum {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum MapCmd {
    Present {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        trunc: u32,
        /// Writes the presentation here and the z-variable table next to it.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Points {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        trunc: u32,
    },
}

#[derive(Subcommand, Debug)]
enum HomotopyCmd {
    Verify { f: PathBuf, g: PathBuf, h: PathBuf },
    Search {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 1)]
        xdeg: u32,
        #[arg(long, default_value_t = 1)]
        bdeg: u32,
        /// Writes a found certificate as a morphism file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks that p0 and p1 agree on an invariant of A[x].
    Invariance {
        file: PathBuf,
        /// pi0, derham_h0 or sing_h0.
        #[arg(long, default_value = "pi0")]
        hook: Hook,
        #[arg(long, default_value_t = 2)]
        deg: u32,
        #[arg(long, default_value_t = 2)]
        tower: u32,
    },
}

#[derive(Subcommand, Debug)]
enum DerhamCmd {
    H0 {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        deg: u32,
    },
    CheckIntegration {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        bdeg: u32,
        #[arg(long, default_value_t = 6)]
        xdeg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum SingCmd {
    H0 {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        tower: u32,
        #[arg(long, default_value_t = 2)]
        deg: u32,
    },
    Complex {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 1)]
        trunc: u32,
        #[arg(long, default_value_t = 2)]
        deg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Lemmas {
        #[arg(long)]
        only: Option<LemmaGroup>,
    },
    #[command(subcommand)]
    Law(LawCmd),
}

#[derive(Subcommand, Debug)]
enum LawCmd {
    /// M(A, B ⊗ B') ≅ M(M(A, B), B').
    Exp {
        a: PathBuf,
        b: PathBuf,
        b2: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: u32,
        #[arg(long)]
        deg2: Option<u32>,
    },
    /// M(A ⊗ A', B) ≅ M(A, B) ⊗ M(A', B).
    Tensor {
        a: PathBuf,
        a2: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: u32,
    },
    /// M(A, B ⊕ B') ≅ M(A, B) ⊗ M(A, B').
    Dsum { a: PathBuf, b: PathBuf, b2: PathBuf },
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
}

fn verdict(check: impl Into<String>, passed: bool) -> Verdict {
    Verdict { check: check.into(), passed }
}

struct Outcome {
    bounds: Value,
    result: Value,
    checks: Vec<Verdict>,
}

struct Ctx {
    guards: Guards,
    cache: GbCache,
    exec: Exec,
    inputs: Vec<Vec<u8>>,
    cache_log: Vec<CacheStatus>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| Error::invalid(format!("{} is not UTF-8", path.display())))?;
        self.inputs.push(bytes);
        Ok(text)
    }

    fn algebra(&mut self, path: &Path) -> Result<Algebra> {
        let text = self.read(path)?;
        let a = algebra_from_json(&text, self.guards)?;
        let (a, status) = self.cache.attach(&a)?;
        self.cache_log.push(status);
        Ok(a)
    }

    fn morphism(&mut self, path: &Path) -> Result<AlgebraMorphism> {
        let text = self.read(path)?;
        let f: MorphismFile = serde_json::from_str(&text)?;
        morphism_from_file(&f, path.parent().unwrap_or(Path::new(".")), self.guards)
    }

    fn digest(&self) -> String {
        let mut all = Vec::new();
        for b in &self.inputs {
            all.extend_from_slice(&(b.len() as u64).to_le_bytes());
            all.extend_from_slice(b);
        }
        sha256_hex(&all)
    }
}

fn strs(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn write_json<T: Serialize>(path: &Path, x: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(x)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn law_outcome(r: LawReport, bounds: Value) -> Result<Outcome> {
    let mut checks = vec![verdict("forward and backward maps are mutually inverse", r.mutually_inverse)];
    if let Some((l, rr)) = r.point_counts {
        checks.push(verdict("point counts agree", l == rr));
    }
    Ok(Outcome { bounds, result: to_value(&r)?, checks })
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Alg(AlgCmd::Gb { file }) => {
            let a = ctx.algebra(&file)?;
            let gb = a.gb()?;
            let basis = a.basis()?;
            let std = basis.as_ref().map(|b| b.iter().map(|m| format_monomial(m, a.vars())).collect::<Vec<_>>());
            Ok(Outcome {
                bounds: json!({}),
                result: json!({
                    "vars": a.vars(),
                    "relations": strs(a.relations()),
                    "order": "degrevlex",
                    "groebner_basis": strs(gb.polys()),
                    "unit_ideal": gb.is_unit_ideal(),
                    "dimension": basis.as_ref().map(|b| b.len()),
                    "standard_monomials": std,
                }),
                checks: Vec::new(),
            })
        }
        Command::Alg(AlgCmd::Nf { file, elems }) => {
            let a = ctx.algebra(&file)?;
            let rows = elems
                .iter()
                .map(|e| Ok(json!({"input": e, "normal_form": a.nf(&a.parse_elem(e)?)?.to_string()})))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome { bounds: json!({}), result: json!({ "normal_forms": rows }), checks: Vec::new() })
        }
        Command::Alg(AlgCmd::Points { file }) => {
            let a = ctx.algebra(&file)?;
            let pts = point_coordinates_with(&a, ctx.exec)?;
            let shown: Vec<Vec<String>> = pts.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect();
            Ok(Outcome {
                bounds: json!({}),
                result: json!({"vars": a.vars(), "count": pts.len(), "points": shown}),
                checks: Vec::new(),
            })
        }
        Command::Hom(HomCmd::Check { morphism }) => {
            let f = ctx.morphism(&morphism)?;
            Ok(Outcome {
                bounds: json!({}),
                result: json!({
                    "source": f.source().vars(),
                    "target": f.target().vars(),
                    "images": f.image_strings(),
                }),
                checks: vec![verdict("relations map into the target ideal", true)],
            })
        }
        Command::Hom(HomCmd::Enum { source, target, deg }) => {
            let (a, b) = (ctx.algebra(&source)?, ctx.algebra(&target)?);
            let homs = enumerate_hom_with(&a, &b, deg, ctx.exec)?;
            let ims: Vec<Vec<String>> = homs.iter().map(|h| h.image_strings()).collect();
            Ok(Outcome { bounds: json!({"deg": deg}), result: json!({"count": homs.len(), "morphisms": ims}), checks: Vec::new() })
        }
        Command::Map(MapCmd::Present { source, target, trunc, output }) => {
            let (a, b) = (ctx.algebra(&source)?, ctx.algebra(&target)?);
            let ms = uniform_mapspace(&a, &b, trunc)?;
            let file = AlgebraFile::from_algebra(&ms.alg);
            let table: Vec<Value> = ms
                .index_table()
                .into_iter()
                .map(|(v, g, m)| json!({"var": v, "generator": g, "monomial": m}))
                .collect();
            if let Some(out) = &output {
                write_json(out, &file)?;
                write_json(&out.with_extension("zvars.json"), &table)?;
            }
            Ok(Outcome {
                bounds: json!({"trunc": trunc}),
                result: json!({"presentation": to_value(&file)?, "zvars": table}),
                checks: Vec::new(),
            })
        }
        Command::Map(MapCmd::Points { source, target, trunc }) => {
            let (a, b) = (ctx.algebra(&source)?, ctx.algebra(&target)?);
            let ms = uniform_mapspace(&a, &b, trunc)?;
            let c = points_crosscheck(&ms, trunc, ctx.exec)?;
            Ok(Outcome {
                bounds: json!({"trunc": trunc}),
                checks: vec![verdict("morphisms and points correspond", c.homs == c.points)],
                result: to_value(&c)?,
            })
        }
        Command::Homotopy(HomotopyCmd::Verify { f, g, h }) => {
            let (f, g, h) = (ctx.morphism(&f)?, ctx.morphism(&g)?, ctx.morphism(&h)?);
            let eh = homotopy_verify(&f, &g, &h)?;
            let flipped = eh.reversed()?;
            Ok(Outcome {
                bounds: json!({}),
                result: json!({
                    "f": eh.f.image_strings(),
                    "g": eh.g.image_strings(),
                    "h": eh.h.image_strings(),
                    "reversed": flipped.h.image_strings(),
                }),
                checks: vec![verdict("p0 H = f", true), verdict("p1 H = g", true), verdict("flipped certificate", true)],
            })
        }
        Command::Homotopy(HomotopyCmd::Search { f, g, xdeg, bdeg, output }) => {
            let (f, g) = (ctx.morphism(&f)?, ctx.morphism(&g)?);
            let bounds = SearchBounds { xdeg, bdeg };
            let out = homotopy_search_with(&f, &g, bounds, ctx.exec)?;
            let mut result = json!({"outcome": out.tag()});
            let mut checks = Vec::new();
            match &out {
                SearchOutcome::Found(h) => {
                    result["certificate"] = json!(h.h.image_strings());
                    checks.push(verdict("certificate verified", true));
                    checks.push(verdict("flipped certificate", h.reversed().is_ok()));
                    if let Some(path) = &output {
                        write_json(path, &MorphismFile::from_morphism(&h.h))?;
                    }
                }
                SearchOutcome::Undecided(why) => result["note"] = json!(why),
                SearchOutcome::NoneWithinBounds => {}
            }
            Ok(Outcome { bounds: to_value(&bounds)?, result, checks })
        }
        Command::Homotopy(HomotopyCmd::Invariance { file, hook, deg, tower }) => {
            let a = ctx.algebra(&file)?;
            let r = p0p1_invariance_harness(&a, hook, deg, tower)?;
            Ok(Outcome {
                bounds: json!({"deg": deg, "tower": tower}),
                result: to_value(&r)?,
                checks: vec![verdict("p0 and p1 agree on the invariant of A[x]", true)],
            })
        }
        Command::Pi0 { file, method, deg, tower } => {
            let a = ctx.algebra(&file)?;
            let routes: Vec<Route> = if method == "all" {
                vec![Route::Derham, Route::Equalizer, Route::Idempotent]
            } else {
                vec![method.parse()?]
            };
            let rs = pi0_routes(&a, &routes, deg, tower)?;
            let mut checks = vec![verdict("reported elements pass the equalizer test", true)];
            let by = |r: Route| rs.iter().find(|x| x.route == r && x.note.as_deref().map_or(true, |n| !n.starts_with("skipped")));
            if let (Some(d), Some(e)) = (by(Route::Derham), by(Route::Equalizer)) {
                checks.push(verdict("de Rham and equalizer routes span the same space", same_span(&d.basis, &e.basis)));
            }
            if let (Some(d), Some(i)) = (by(Route::Derham), by(Route::Idempotent)) {
                checks.push(verdict("idempotents lie in the de Rham kernel", in_span(&d.basis, &i.idempotents)));
            }
            let components = rs.iter().find_map(|r| r.components);
            Ok(Outcome {
                bounds: json!({"deg": deg, "tower": tower}),
                result: json!({"components": components, "routes": to_value(&rs)?}),
                checks,
            })
        }
        Command::Derham(DerhamCmd::H0 { file, deg }) => {
            let a = ctx.algebra(&file)?;
            let k = derham_h0(&a, deg)?;
            let mut result = to_value(&k)?;
            result["dimension"] = json!(k.dim());
            Ok(Outcome {
                bounds: json!({"deg": deg}),
                result,
                checks: vec![verdict("kernel contains 1 and is closed under products", true)],
            })
        }
        Command::Derham(DerhamCmd::CheckIntegration { file, bdeg, xdeg }) => {
            let a = ctx.algebra(&file)?;
            let ext = polynomial_extension(&a)?;
            let (fns, forms) = integration_samples(&ext, bdeg, xdeg)?;
            let r = integration_homotopy_check(&ext, &fns, &forms, bdeg + xdeg + 2)?;
            Ok(Outcome {
                bounds: json!({"bdeg": bdeg, "xdeg": xdeg}),
                result: to_value(&r)?,
                checks: vec![
                    verdict("(p1 - p0)a = phi1(da) on functions", true),
                    verdict("(p1 - p0)w = phi2(dw) + d phi1(w) on 1-forms", true),
                ],
            })
        }
        Command::Sing(SingCmd::H0 { file, tower, deg }) => {
            let a = ctx.algebra(&file)?;
            let s = sing_h0(&a, tower, deg)?;
            Ok(Outcome { bounds: json!({"tower": tower, "deg": deg}), result: to_value(&s)?, checks: Vec::new() })
        }
        Command::Sing(SingCmd::Complex { file, levels, trunc, deg }) => {
            let a = ctx.algebra(&file)?;
            let m = moore_complex(&a, trunc, deg, levels)?;
            let checks = vec![
                verdict(format!("cosimplicial identities ({} instances)", m.identities.checked), true),
                verdict(format!("Moore differential squares to zero ({} slices)", m.dd_checks), true),
            ];
            Ok(Outcome { bounds: json!({"levels": levels, "trunc": trunc, "deg": deg}), result: to_value(&m)?, checks })
        }
        Command::Verify(VerifyCmd::Lemmas { only }) => {
            let reports = lemma_suite(only)?;
            let checks = reports
                .iter()
                .flat_map(|r| r.checks.iter().map(move |c| verdict(format!("{}: {}", r.lemma, c.name), c.passed)))
                .collect();
            Ok(Outcome {
                bounds: json!({"only": only.map(|g| g.to_string())}),
                result: json!({"reports": to_value(&reports)?}),
                checks,
            })
        }
        Command::Verify(VerifyCmd::Law(law)) => match law {
            LawCmd::Exp { a, b, b2, deg, deg2 } => {
                let (a, b, b2) = (ctx.algebra(&a)?, ctx.algebra(&b)?, ctx.algebra(&b2)?);
                let d2 = deg2.unwrap_or(deg);
                law_outcome(exponential_law(&a, &b, &b2, deg, d2)?, json!({"deg": deg, "deg2": d2}))
            }
            LawCmd::Tensor { a, a2, b, deg } => {
                let (a, a2, b) = (ctx.algebra(&a)?, ctx.algebra(&a2)?, ctx.algebra(&b)?);
                law_outcome(tensor_law(&a, &a2, &b, deg)?, json!({"deg": deg}))
            }
            LawCmd::Dsum { a, b, b2 } => {
                let (a, b, b2) = (ctx.algebra(&a)?, ctx.algebra(&b)?, ctx.algebra(&b2)?);
                law_outcome(directsum_law(&a, &b, &b2)?, json!({"trunc": "full"}))
            }
        },
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: u32,
    command: &'a [String],
    inputs_digest: String,
    bounds: Value,
    result: Value,
    checks: Vec<Verdict>,
    timing_ms: u64,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    schema: u32,
    command: &'a [String],
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    exit_code: i32,
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::UnknownIdentifier(_) => "unknown_identifier",
        Error::RingMismatch(_) => "ring_mismatch",
        Error::FieldMismatch(_) => "field_mismatch",
        Error::NegativeExponent(_) => "negative_exponent",
        Error::NotInvertible { .. } => "not_invertible",
        Error::InvalidInput(_) => "invalid_input",
        Error::ResourceLimit { .. } => "resource_limit",
        Error::RelationViolation { .. } => "relation_violation",
        Error::UnsupportedField(_) => "unsupported_field",
        Error::TruncationTooSmall(_) => "truncation_too_small",
        Error::EndpointMismatch { .. } => "endpoint_mismatch",
        Error::Hypothesis(_) => "hypothesis",
        Error::PropertyViolation { .. } => "property_violation",
        Error::ChainLink { .. } => "chain_link",
        Error::Io(_) => "io",
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_parsed(cli, &echo, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            code
        }
    }
}

fn run_parsed(cli: Cli, echo: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let started = Instant::now();
    let format = cli.format;
    let fail = |e: Error, out: &mut dyn Write, err: &mut dyn Write| {
        let code = e.exit_code();
        if format == Format::Json {
            let doc = ErrorDocument {
                schema: 1,
                command: echo,
                error: ErrorBody { kind: kind(&e), message: e.to_string(), exit_code: code },
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        let _ = writeln!(err, "error: {e}");
        code
    };
    let guards = match Guards::from_env() {
        Ok(g) => g,
        Err(e) => return fail(e, out, err),
    };
    let cache = match (&cli.cache_dir, cli.no_cache) {
        (_, true) => GbCache::disabled(),
        (Some(d), false) => GbCache::at(d),
        (None, false) => GbCache::from_env(),
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::best() };
    let mut ctx = Ctx { guards, cache, exec, inputs: Vec::new(), cache_log: Vec::new() };
    let outcome = match dispatch(cli.command, &mut ctx) {
        Ok(o) => o,
        Err(e) => return fail(e, out, err),
    };
    let doc = ReportDocument {
        schema: 1,
        command: echo,
        inputs_digest: ctx.digest(),
        bounds: outcome.bounds,
        result: outcome.result,
        checks: outcome.checks,
        timing_ms: started.elapsed().as_millis() as u64,
    };
    let code = if doc.checks.iter().all(|c| c.passed) { 0 } else { 1 };
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Text => {
            if let Value::Object(m) = &doc.result {
                for (k, v) in m {
                    let _ = writeln!(out, "{k}: {}", text_value(v));
                }
            } else {
                let _ = writeln!(out, "{}", doc.result);
            }
            if let Value::Object(m) = &doc.bounds {
                for (k, v) in m {
                    let _ = writeln!(out, "bound {k}: {}", text_value(v));
                }
            }
            for c in &doc.checks {
                let _ = writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.check);
            }
            for s in &ctx.cache_log {
                if *s != CacheStatus::Disabled {
                    let _ = writeln!(err, "cache: {}", serde_json::to_string(s).expect("serializable").trim_matches('"'));
                }
            }
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("affpi0").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lemmas_pass_and_usage_errors() {
        let (code, out, _) = run_args(&["verify", "lemmas", "--only", "rotation"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS rotation matrix: det R = 1"));
        let (code, _, err) = run_args(&["verify", "lemmas", "--only", "nonsense"]);
        assert_eq!(code, 2);
        assert!(err.contains("nonsense"));
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn json_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        std::fs::write(&p, "{ nope").unwrap();
        let (code, out, _) = run_args(&["--format", "json", "alg", "gb", p.to_str().unwrap()]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["error"]["kind"], "invalid_input");
    }
}
