//! Command-line front-end. [`run`] takes the argument vector and returns the
//! exit code and the text for stdout, so it can be tested without a process.

mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tropic::cubic::CubicContext;
use tropic::curve::{
    corner_locus, decompose_transverse_union, degree_genus_report, is_smooth, newton_subdivision, NewtonSubdivision,
    PlaneTropicalCurve,
};
use tropic::enumeration::{count_curves, invariance_harness, PointConfiguration};
use tropic::exact::{format_rational, parse_rational, PointQ2, Rational};
use tropic::intersection::{stable_intersection, transverse_intersections, union};
use tropic::puiseux::{kapranov_check, PuiseuxPoint, PuiseuxPolynomial};
use tropic::recursion::{kontsevich, table_json};
use tropic::tropical::{parse, TropicalPolynomial};

pub use render::{render_curve, render_subdivision};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad invocation: exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Bad input or a failed computation: exit code 1.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "tropic", version, about = "Plane tropical curves with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Inputs: polynomial expressions and JSON files (polynomial, curve or
/// subdivision), taken in that order.
#[derive(Args, Debug, Default)]
struct Source {
    /// Tropical polynomial, e.g. "3*x + 2*y + 0"
    #[arg(long, allow_hyphen_values = true)]
    expr: Vec<String>,
    /// JSON file holding a polynomial, a curve or a subdivision
    #[arg(long)]
    input: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a polynomial and print it as JSON
    Parse(Source),
    /// Evaluate a polynomial at a point
    Eval {
        #[command(flatten)]
        source: Source,
        /// Point as x,y with rational coordinates
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Corner locus of a polynomial
    Curve(Source),
    /// Newton subdivision of a polynomial
    Subdivision(Source),
    /// Decide whether a subdivision is induced by a lift
    Regular(Source),
    /// Transverse intersection points of two curves
    Intersect(Source),
    /// Stable intersection of two curves
    Stable(Source),
    /// Union of two curves
    Union(Source),
    /// Degree and genus
    Genus(Source),
    /// Whether the dual subdivision is a unimodular triangulation
    Smooth(Source),
    /// Split a union of two transversal curves
    Decompose(Source),
    /// Count rational curves through seeded points
    Count {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        seed: u64,
        /// Repeat on this many configurations and compare totals
        #[arg(long)]
        trials: Option<usize>,
        /// Accepted for compatibility; Welschinger totals are always reported
        #[arg(long)]
        welschinger: bool,
    },
    /// Kontsevich numbers up to a degree
    Kontsevich {
        #[arg(long)]
        dmax: u32,
    },
    /// Add two points on the cycle of a smooth cubic
    CubicAdd {
        #[command(flatten)]
        source: Source,
        /// Loop parameters O,P,Q: edge index plus fraction along it
        #[arg(long = "loop")]
        params: String,
    },
    /// Draw a curve or subdivision as SVG
    Render {
        #[command(flatten)]
        source: Source,
        /// Draw the Newton subdivision of an expression instead of its curve
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a point over the Puiseux field against a polynomial
    Kapranov {
        /// JSON file {"f": polynomial, "point": {"z1": series, "z2": series}}
        #[arg(long)]
        input: PathBuf,
    },
}

enum Item {
    Poly(TropicalPolynomial),
    Curve(PlaneTropicalCurve),
    Subdivision(NewtonSubdivision),
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn item_from_json(v: Value) -> Result<Item, CliError> {
    if v.get("terms").is_some() {
        serde_json::from_value(v).map(Item::Poly).map_err(domain)
    } else if v.get("cells").is_some() {
        serde_json::from_value(v).map(Item::Subdivision).map_err(domain)
    } else {
        serde_json::from_value(v).map(Item::Curve).map_err(domain)
    }
}

fn items(s: &Source) -> Result<Vec<Item>, CliError> {
    let mut out = Vec::new();
    for e in &s.expr {
        out.push(Item::Poly(parse(e).map_err(domain)?));
    }
    for p in &s.input {
        out.push(item_from_json(read_json(p)?)?);
    }
    Ok(out)
}

fn exactly<const N: usize>(s: &Source) -> Result<[Item; N], CliError> {
    let v = items(s)?;
    let n = v.len();
    v.try_into().map_err(|_| CliError::Usage(format!("expected {N} input(s) from --expr/--input, got {n}")))
}

fn polynomial(item: Item) -> Result<TropicalPolynomial, CliError> {
    match item {
        Item::Poly(g) => Ok(g),
        _ => Err(domain("expected a polynomial")),
    }
}

fn curve(item: Item) -> Result<PlaneTropicalCurve, CliError> {
    match item {
        Item::Poly(g) => Ok(corner_locus(&g).0),
        Item::Curve(c) => Ok(c),
        Item::Subdivision(_) => Err(domain("expected a polynomial or a curve")),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn rationals(text: &str, n: usize) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(CliError::Usage(format!("expected {n} comma-separated rationals, got {text:?}")));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).ok_or_else(|| CliError::Usage(format!("bad rational {p:?}"))))
        .collect()
}

fn dispatch(command: Command) -> Result<Value, CliError> {
    Ok(match command {
        Command::Parse(s) => {
            let [g] = exactly(&s)?;
            to_value(&polynomial(g)?)
        }
        Command::Eval { source, at } => {
            let [g] = exactly(&source)?;
            let xy = rationals(&at, 2)?;
            let p = PointQ2::new(xy[0].clone(), xy[1].clone());
            json!(format_rational(&polynomial(g)?.eval(&p)))
        }
        Command::Curve(s) => {
            let [g] = exactly(&s)?;
            to_value(&curve(g)?)
        }
        Command::Subdivision(s) => {
            let [g] = exactly(&s)?;
            to_value(&newton_subdivision(&polynomial(g)?))
        }
        Command::Regular(s) => {
            let sub = match exactly(&s)? {
                [Item::Subdivision(sub)] => sub,
                [Item::Poly(g)] => newton_subdivision(&g),
                _ => return Err(domain("expected a subdivision or a polynomial")),
            };
            let r = sub.is_regular().map_err(domain)?;
            json!({ "regular": r.regular, "witness": r.witness.as_ref().map(to_value) })
        }
        Command::Intersect(s) => {
            let [a, b] = exactly(&s)?;
            to_value(&transverse_intersections(&curve(a)?, &curve(b)?).map_err(domain)?)
        }
        Command::Stable(s) => {
            let [a, b] = exactly(&s)?;
            to_value(&stable_intersection(&curve(a)?, &curve(b)?).map_err(domain)?)
        }
        Command::Union(s) => {
            let [a, b] = exactly(&s)?;
            to_value(&union(&curve(a)?, &curve(b)?))
        }
        Command::Genus(s) => match exactly(&s)? {
            [Item::Poly(g)] => {
                let (c, cert) = corner_locus(&g);
                match degree_genus_report(&c, &cert) {
                    Some(r) => to_value(&r),
                    None => json!({ "d": null, "g": c.genus() }),
                }
            }
            [other] => {
                let c = curve(other)?;
                json!({ "d": c.degree(), "g": c.genus() })
            }
        },
        Command::Smooth(s) => {
            let [g] = exactly(&s)?;
            let (c, cert) = corner_locus(&polynomial(g)?);
            json!({ "smooth": is_smooth(&c, &cert) })
        }
        Command::Decompose(s) => {
            let [c] = exactly(&s)?;
            let c = curve(c)?;
            match decompose_transverse_union(&c).map_err(domain)? {
                Some((a, b)) => json!({ "components": [to_value(&a), to_value(&b)] }),
                None => json!({ "components": [to_value(&c.canonical())] }),
            }
        }
        Command::Count { degree, seed, trials, welschinger: _ } => match trials {
            Some(k) => {
                let r = invariance_harness(degree, k, seed).map_err(domain)?;
                if !r.consistent {
                    return Err(CliError::Domain(format!("totals differ between configurations: {}", to_value(&r))));
                }
                to_value(&r)
            }
            None => to_value(&count_curves(degree, &PointConfiguration::random(degree, seed)).map_err(domain)?),
        },
        Command::Kontsevich { dmax } => {
            if dmax == 0 {
                return Err(CliError::Usage("--dmax must be at least 1".into()));
            }
            table_json(&kontsevich(dmax))
        }
        Command::CubicAdd { source, params } => {
            let [c] = exactly(&source)?;
            let c = curve(c)?;
            let r = rationals(&params, 3)?;
            let probe = CubicContext::new(&c, tropic::cubic::LoopPoint { edge: 0, t: Rational::from_integer(0.into()) })
                .map_err(domain)?;
            let ctx = CubicContext::new(&c, probe.loop_point(&r[0])).map_err(domain)?;
            let sum = ctx.add(&ctx.loop_point(&r[1]), &ctx.loop_point(&r[2])).map_err(domain)?;
            json!({ "sum": format_rational(&ctx.param(&sum)), "point": to_value(&ctx.position(&sum)) })
        }
        Command::Render { source, dual, out } => {
            let [item] = exactly(&source)?;
            let svg = match (item, dual) {
                (Item::Subdivision(s), _) => render_subdivision(&s),
                (Item::Poly(g), true) => render_subdivision(&newton_subdivision(&g)),
                (other, _) => render_curve(&curve(other)?),
            };
            std::fs::write(&out, svg).map_err(|e| domain(format!("{}: {e}", out.display())))?;
            json!({ "written": out.display().to_string() })
        }
        Command::Kapranov { input } => {
            let v = read_json(&input)?;
            let f: PuiseuxPolynomial =
                serde_json::from_value(v.get("f").cloned().unwrap_or(Value::Null)).map_err(domain)?;
            let p: PuiseuxPoint =
                serde_json::from_value(v.get("point").cloned().unwrap_or(Value::Null)).map_err(domain)?;
            let p = PuiseuxPoint::new(p.z1, p.z2).map_err(domain)?;
            to_value(&kapranov_check(&f, &p).map_err(domain)?)
        }
    })
}

/// Runs one command. Errors are reported on stdout as `{"error": ...}`;
/// the code is 0 on success, 1 for domain errors and 2 for usage errors.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, json!({ "error": e.to_string() }).to_string() + "\n"),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(v) => (0, v.to_string() + "\n"),
        Err(e) => (e.code(), json!({ "error": e.to_string() }).to_string() + "\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lists() {
        assert_eq!(rationals("5/2,7", 2).unwrap(), vec![Rational::new(5.into(), 2.into()), Rational::from_integer(7.into())]);
        assert!(matches!(rationals("1", 2), Err(CliError::Usage(_))));
        assert!(matches!(rationals("1,x", 2), Err(CliError::Usage(_))));
    }

    #[test]
    fn codes() {
        assert_eq!(run(["tropic", "nonsense"]).0, 2);
        assert_eq!(run(["tropic", "curve", "--expr", "3*x +"]).0, 1);
        assert_eq!(run(["tropic", "curve"]).0, 2);
        assert_eq!(run(["tropic", "--help"]).0, 0);
    }
}
