//! The `endoclass` command line.
//!
//! Exit codes: 0 on success or a passing verdict, 1 on a negative decision
//! (not isomorphic, not related, verification failed), 2 on usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{self, format_table, AlgebraType, SParams, StructureMatrix};
use crate::classify::{self, max_q_from_env, theorem_families};
use crate::equiv::{self, RelationId, RelationSupport, SearchOutcome, Witness};
use crate::error::{Error, Result};
use crate::fields::{AnyField, Field, FieldDescriptor, FiniteField, RationalFunctionsF2, MAX_FIELD_ORDER};
use crate::iso::{self, Transform};
use crate::json::{
    algebra_from_json, elem_to_json, matrix_to_json, sparams_to_json, transform_from_json,
    transform_to_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "endoclass", version, about = "Two-dimensional endo-commutative algebras over exact fields")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Field: F5, F2^3/x^3+x+1, F9, Q, F2(X).
    #[arg(long, value_name = "SPEC")]
    field: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a field, or list the supported fields.
    Fields {
        #[arg(long, value_name = "SPEC")]
        field: Option<String>,
    },
    /// List endo-commutative straight algebras of a type.
    Enumerate {
        #[command(flatten)]
        field: FieldArg,
        /// I, II1, II2, II3 or III.
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        /// II1 subclass.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        subclass: Option<u8>,
    },
    /// Search for (or check) an isomorphism between two algebras.
    Iso {
        #[command(flatten)]
        field: FieldArg,
        /// Parameters {"p":..,"d":..} or a structure matrix {"rows": ..}.
        #[arg(long, value_name = "JSON")]
        lhs: String,
        #[arg(long, value_name = "JSON")]
        rhs: String,
        /// Check this matrix [[x,y],[z,w]] instead of searching.
        #[arg(long, value_name = "JSON")]
        check: Option<String>,
    },
    /// Equivalence relations on the nonzero field elements.
    Equiv {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        relation: String,
        /// Print a complete representative system.
        #[arg(long, conflicts_with = "test")]
        reps: bool,
        /// Decide t ~ t'.
        #[arg(long, num_args = 2, value_names = ["T", "T2"], allow_hyphen_values = true)]
        test: Option<Vec<String>>,
        /// Bounded search over F2(X) for sim2/sim4 (with --test).
        #[arg(long, value_name = "D", requires = "test")]
        degree_bound: Option<u32>,
    },
    /// Isomorphism classes of type-II1 algebras.
    Classes {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Check the predicted families against the computed classes.
    Verify {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Multiplication tables, of one algebra or of every predicted family.
    Table {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_name = "JSON")]
        algebra: Option<String>,
    },
}

/// Runs the command line on `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    // Buffered so the work can move onto a sized pool.
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let result = match cli.jobs {
        Some(0) => Err(Error::Parse("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut o, &mut e)),
            Err(e) => Err(Error::Parse(e.to_string())),
        },
        None => dispatch(&cli, &mut o, &mut e),
    };
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    match &cli.command {
        Command::Fields { field } => cmd_fields(field.as_deref(), fmt, out),
        Command::Enumerate { field, ty, subclass } => {
            cmd_enumerate(&finite(&field.field)?, ty.as_deref(), *subclass, fmt, out)
        }
        Command::Iso { field, lhs, rhs, check } => {
            let (lhs, rhs, check) = (parse_json(lhs)?, parse_json(rhs)?, check.as_deref().map(parse_json).transpose()?);
            match parse_field(&field.field)? {
                AnyField::Finite(k) => cmd_iso(&k, &lhs, &rhs, check.as_ref(), fmt, out),
                AnyField::Rationals(k) => cmd_iso(&k, &lhs, &rhs, check.as_ref(), fmt, out),
                AnyField::RationalFunctions(k) => cmd_iso(&k, &lhs, &rhs, check.as_ref(), fmt, out),
            }
        }
        Command::Equiv { field, relation, reps, test, degree_bound } => {
            let rel: RelationId = relation.parse()?;
            let req = EquivRequest { rel, reps: *reps, test: test.as_deref(), bound: *degree_bound };
            match parse_field(&field.field)? {
                AnyField::Finite(k) => cmd_equiv(&k, &req, fmt, out),
                AnyField::Rationals(k) => cmd_equiv(&k, &req, fmt, out),
                AnyField::RationalFunctions(k) => cmd_equiv(&k, &req, fmt, out),
            }
        }
        Command::Classes { field } => cmd_classes(&finite(&field.field)?, fmt, out),
        Command::Verify { field } => cmd_verify(&finite(&field.field)?, fmt, out, err),
        Command::Table { field, algebra } => {
            let alg = algebra.as_deref().map(parse_json).transpose()?;
            match parse_field(&field.field)? {
                AnyField::Finite(k) => match alg {
                    Some(v) => cmd_table_one(&k, &v, fmt, out),
                    None => cmd_table_families(&k, fmt, out),
                },
                AnyField::Rationals(k) => cmd_table_one(&k, &alg.ok_or_else(need_algebra)?, fmt, out),
                AnyField::RationalFunctions(k) => cmd_table_one(&k, &alg.ok_or_else(need_algebra)?, fmt, out),
            }
        }
    }
}

fn need_algebra() -> Error {
    Error::Parse("--algebra is required over an infinite field".into())
}

fn parse_field(spec: &str) -> Result<AnyField> {
    spec.parse()
}

fn finite(spec: &str) -> Result<FiniteField> {
    match parse_field(spec)? {
        AnyField::Finite(k) => Ok(k),
        _ => Err(Error::InfiniteField("this subcommand")),
    }
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad JSON `{s}`: {e}")))
}

fn emit_json(out: &mut dyn Write, v: Value) -> Result<()> {
    let mut v = v;
    if let Value::Object(map) = &mut v {
        let mut with_version = Map::new();
        with_version.insert("version".into(), Value::String(VERSION.into()));
        with_version.extend(std::mem::take(map));
        *map = with_version;
    }
    let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn line(out: &mut dyn Write, s: &str) -> Result<()> {
    writeln!(out, "{s}").map_err(io_error)
}

fn tuple<F: Field>(field: &F, s: &SParams<F::Elem>) -> String {
    let parts: Vec<String> = s.to_array().iter().map(|x| field.format_elem(x)).collect();
    format!("S({})", parts.join(","))
}

fn cmd_fields(spec: Option<&str>, fmt: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let Some(spec) = spec else {
        let finite: Vec<String> = (2..=MAX_FIELD_ORDER)
            .filter_map(|q| FieldDescriptor::gf(q).ok())
            .map(|d| d.to_string())
            .collect();
        if fmt == Some(Format::Json) {
            emit_json(out, json!({"finite": finite, "infinite": ["Q", "F2(X)"]}))?;
        } else {
            for d in finite.iter().map(String::as_str).chain(["Q", "F2(X)"]) {
                line(out, d)?;
            }
        }
        return Ok(EXIT_OK);
    };
    let field = parse_field(spec)?;
    let desc = field.descriptor();
    let (characteristic, order, elements) = match &field {
        AnyField::Finite(k) => (
            k.characteristic(),
            Some(k.order().unwrap_or(0)),
            Some(k.elements()?.iter().map(|x| k.format_elem(x)).collect::<Vec<_>>()),
        ),
        AnyField::Rationals(k) => (k.characteristic(), None, None),
        AnyField::RationalFunctions(k) => (k.characteristic(), None, None),
    };
    match fmt.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            out,
            json!({
                "field": desc.to_string(),
                "characteristic": characteristic,
                "order": order,
                "elements": elements,
            }),
        )?,
        _ => {
            line(out, &format!("field\t{desc}"))?;
            line(out, &format!("characteristic\t{characteristic}"))?;
            if let Some(q) = order {
                line(out, &format!("order\t{q}"))?;
            }
            if let Some(e) = elements {
                line(out, &format!("elements\t{}", e.join(" ")))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn check_size(field: &FiniteField) -> Result<()> {
    let max = max_q_from_env();
    let q = u64::from(field.q());
    if q > max {
        return Err(Error::FieldTooLarge { order: q, max });
    }
    Ok(())
}

fn cmd_enumerate(
    field: &FiniteField,
    ty: Option<&str>,
    subclass: Option<u8>,
    fmt: Option<Format>,
    out: &mut dyn Write,
) -> Result<i32> {
    check_size(field)?;
    if let Some(t) = ty {
        if !AlgebraType::ALL.iter().any(|a| a.family() == t) || t == "not-rank-2" {
            return Err(Error::Parse(format!("unknown type `{t}` (expected I, II1, II2, II3, III)")));
        }
    }
    if subclass.is_some() && ty.is_some_and(|t| t != "II1") {
        return Err(Error::Parse("--subclass applies to type II1 only".into()));
    }
    let algebras = if ty == Some("II1") || subclass.is_some() {
        let lists = classify::direct_scan_subclasses(field)?;
        match subclass {
            Some(n) => lists[usize::from(n - 1)].clone(),
            None => {
                let mut all = lists.concat();
                all.sort();
                all
            }
        }
    } else {
        classify::enumerate_type(field, ty, None)?
    };
    let describe = |s: &SParams<_>| {
        let ty = algebra::type_of(field, s).expect("scanned algebras are EC");
        let sub = (ty == AlgebraType::II1).then(|| algebra::subclass_unchecked(field, s));
        (ty, sub)
    };
    match fmt.unwrap_or(Format::Tsv) {
        Format::Json => {
            let rows: Vec<Value> = algebras
                .iter()
                .map(|s| {
                    let (ty, sub) = describe(s);
                    json!({"params": sparams_to_json(field, s), "type": ty.to_string(), "subclass": sub})
                })
                .collect();
            emit_json(
                out,
                json!({
                    "field": field.descriptor().to_string(),
                    "type": ty,
                    "subclass": subclass,
                    "count": algebras.len(),
                    "algebras": rows,
                }),
            )?;
        }
        Format::Tsv => {
            line(out, "p\tq\ta\tb\tc\td\ttype\tsubclass")?;
            for s in &algebras {
                let (ty, sub) = describe(s);
                let cells: Vec<String> = s.to_array().iter().map(|x| field.format_elem(x)).collect();
                let sub = sub.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
                line(out, &format!("{}\t{ty}\t{sub}", cells.join("\t")))?;
            }
        }
        Format::Text => {
            for s in &algebras {
                let (ty, _) = describe(s);
                line(out, &format!("{}  [{ty}]", tuple(field, s)))?;
                line(out, &format_table(field, &s.to_structure_matrix(field)))?;
                line(out, "")?;
            }
            line(out, &format!("{} algebras", algebras.len()))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_iso<F: Field>(
    field: &F,
    lhs: &Value,
    rhs: &Value,
    check: Option<&Value>,
    fmt: Option<Format>,
    out: &mut dyn Write,
) -> Result<i32> {
    let a = algebra_from_json(field, lhs)?;
    let b = algebra_from_json(field, rhs)?;
    let (witness, mode): (Option<Transform<F::Elem>>, &str) = match check {
        Some(x) => {
            let x = transform_from_json(field, x)?;
            let ok = match iso::transform(field, &a, &x) {
                Ok(image) => image == b,
                Err(Error::SingularTransform) => false,
                Err(e) => return Err(e),
            };
            (ok.then_some(x), "check")
        }
        None => (iso::are_isomorphic(field, &a, &b)?, "search"),
    };
    let system = match (a.as_sparams(field), b.as_sparams(field), &witness) {
        (Some(s), Some(s2), Some(x)) => Some(iso::check_iso_system(field, &s, &s2, x)),
        _ => None,
    };
    match fmt.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            out,
            json!({
                "field": field.descriptor().to_string(),
                "mode": mode,
                "isomorphic": witness.is_some(),
                "witness": witness.as_ref().map(|x| transform_to_json(field, x)),
                "system_holds": system,
            }),
        )?,
        _ => match &witness {
            Some(x) => {
                line(out, &format!("{}\t{}", field.format_elem(&x.x), field.format_elem(&x.y)))?;
                line(out, &format!("{}\t{}", field.format_elem(&x.z), field.format_elem(&x.w)))?;
            }
            None => line(out, "not isomorphic")?,
        },
    }
    Ok(if witness.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

struct EquivRequest<'a> {
    rel: RelationId,
    reps: bool,
    test: Option<&'a [String]>,
    bound: Option<u32>,
}

fn witness_to_json<F: Field>(field: &F, w: &Witness<F::Elem>) -> Value {
    match w {
        Witness::SquareRoot(s) => json!({"kind": "square-root", "s": elem_to_json(field, s)}),
        Witness::ArtinSchreier(x) => json!({"kind": "artin-schreier", "x": elem_to_json(field, x)}),
        Witness::Pair { x, y } => {
            json!({"kind": "pair", "x": elem_to_json(field, x), "y": elem_to_json(field, y)})
        }
    }
}

fn cmd_equiv<F: RelationSupport>(
    field: &F,
    req: &EquivRequest,
    fmt: Option<Format>,
    out: &mut dyn Write,
) -> Result<i32> {
    let fmt = fmt.unwrap_or(Format::Json);
    let name = field.descriptor().to_string();
    if req.reps {
        let reps = equiv::rep_system(field, req.rel)?;
        let mut classes = Map::new();
        for c in &reps.classes {
            let members = c.members.iter().map(|m| elem_to_json(field, m)).collect();
            classes.insert(field.format_elem(&c.representative), Value::Array(members));
        }
        let rep_list: Vec<Value> = reps.representatives.iter().map(|r| elem_to_json(field, r)).collect();
        if fmt == Format::Json {
            emit_json(
                out,
                json!({
                    "field": name,
                    "relation": req.rel.to_string(),
                    "representatives": rep_list,
                    "classes": Value::Object(classes),
                }),
            )?;
        } else if reps.classes.is_empty() {
            for r in &reps.representatives {
                line(out, &field.format_elem(r))?;
            }
        } else {
            for c in &reps.classes {
                let m: Vec<String> = c.members.iter().map(|x| field.format_elem(x)).collect();
                line(out, &format!("{}\t{}", field.format_elem(&c.representative), m.join(" ")))?;
            }
        }
        return Ok(EXIT_OK);
    }
    let Some([t, t2]) = req.test else {
        return Err(Error::Parse("equiv needs --reps or --test T T2".into()));
    };
    let (t, t2) = (field.parse_elem(t)?, field.parse_elem(t2)?);

    if let Some(bound) = req.bound {
        if field.descriptor() != FieldDescriptor::RationalFunctionsF2 {
            return Err(Error::Parse("--degree-bound applies to F2(X) only".into()));
        }
        let k = RationalFunctionsF2;
        let (t, t2) = (k.parse_elem(&field.format_elem(&t))?, k.parse_elem(&field.format_elem(&t2))?);
        let outcome = equiv::bounded_refutation_search(req.rel, &t, &t2, bound)?;
        let (found, x) = match &outcome {
            SearchOutcome::Witness(x) => (true, Some(k.format_elem(x))),
            SearchOutcome::NoWitnessUpTo(_) => (false, None),
        };
        if fmt == Format::Json {
            emit_json(
                out,
                json!({
                    "field": name,
                    "relation": req.rel.to_string(),
                    "t": k.format_elem(&t),
                    "t2": k.format_elem(&t2),
                    "degree_bound": bound,
                    "outcome": if found { "witness" } else { "no-witness-up-to-bound" },
                    "x": x,
                }),
            )?;
        } else {
            match x {
                Some(x) => line(out, &format!("witness x = {x}"))?,
                None => line(out, &format!("no witness up to degree {bound}"))?,
            }
        }
        return Ok(if found { EXIT_OK } else { EXIT_NEGATIVE });
    }

    let d = equiv::related(field, req.rel, &t, &t2)?;
    if fmt == Format::Json {
        emit_json(
            out,
            json!({
                "field": name,
                "relation": req.rel.to_string(),
                "t": elem_to_json(field, &t),
                "t2": elem_to_json(field, &t2),
                "related": d.related,
                "witness": d.witness.as_ref().map(|w| witness_to_json(field, w)),
            }),
        )?;
    } else {
        line(out, if d.related { "related" } else { "not related" })?;
    }
    Ok(if d.related { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_classes(field: &FiniteField, fmt: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    check_size(field)?;
    let algebras = classify::direct_scan_subclasses(field)?.concat();
    let classes = classify::iso_classes(field, &algebras)?;
    match fmt.unwrap_or(Format::Json) {
        Format::Json => {
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "representative": sparams_to_json(field, &c.representative),
                        "size": c.members.len(),
                        "members": c.members.iter().map(|m| json!({
                            "params": sparams_to_json(field, &m.params),
                            "witness": transform_to_json(field, &m.witness),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit_json(
                out,
                json!({
                    "field": field.descriptor().to_string(),
                    "scanned": algebras.len(),
                    "class_count": classes.len(),
                    "classes": list,
                }),
            )?;
        }
        Format::Tsv => {
            line(out, "class\tp\tq\ta\tb\tc\td")?;
            for (i, c) in classes.iter().enumerate() {
                for m in &c.members {
                    let cells: Vec<String> = m.params.to_array().iter().map(|x| field.format_elem(x)).collect();
                    line(out, &format!("{i}\t{}", cells.join("\t")))?;
                }
            }
        }
        Format::Text => {
            for c in &classes {
                line(out, &format!("{}  ({} members)", tuple(field, &c.representative), c.members.len()))?;
                line(out, &format_table(field, &c.representative.to_structure_matrix(field)))?;
                line(out, "")?;
            }
            line(out, &format!("{} classes", classes.len()))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(field: &FiniteField, fmt: Option<Format>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let report = classify::verify_classification(field)?;
    match fmt.unwrap_or(Format::Json) {
        Format::Json => {
            emit_json(out, report.to_json())?;
            err.write_all(report.summary_table().as_bytes()).map_err(io_error)?;
        }
        _ => out.write_all(report.summary_table().as_bytes()).map_err(io_error)?,
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn describe_algebra<F: Field>(field: &F, m: &StructureMatrix<F::Elem>) -> Value {
    let params = m.as_sparams(field);
    let ec = params.as_ref().map(|s| algebra::is_endo_commutative_straight(field, s));
    let ty = params.as_ref().and_then(|s| algebra::type_of(field, s).ok());
    json!({
        "matrix": matrix_to_json(field, m),
        "table": format_table(field, m),
        "rank": algebra::rank(field, m),
        "endo_commutative": ec,
        "type": ty.map(|t| t.to_string()),
    })
}

fn cmd_table_one<F: Field>(field: &F, v: &Value, fmt: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let m = algebra_from_json(field, v)?;
    match fmt.unwrap_or(Format::Text) {
        Format::Json => emit_json(out, describe_algebra(field, &m))?,
        _ => line(out, &format_table(field, &m))?,
    }
    Ok(EXIT_OK)
}

fn cmd_table_families(field: &FiniteField, fmt: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let families = theorem_families(field)?;
    match fmt.unwrap_or(Format::Text) {
        Format::Json => {
            let list: Vec<Value> = families
                .iter()
                .map(|(label, s)| {
                    let mut v = describe_algebra(field, &s.to_structure_matrix(field));
                    v["family"] = label.to_json(field);
                    v["params"] = sparams_to_json(field, s);
                    v
                })
                .collect();
            emit_json(out, json!({"field": field.descriptor().to_string(), "families": list}))?;
        }
        _ => {
            for (label, s) in &families {
                line(out, &format!("{}  {}", label.render(field), tuple(field, s)))?;
                line(out, &format_table(field, &s.to_structure_matrix(field)))?;
                line(out, "")?;
            }
        }
    }
    Ok(EXIT_OK)
}
