//! Command-line front end, JSON/DOT emitters and the on-disk cache.
//!
//! Every subcommand writes JSON (or DOT for `quiver --dot`) to stdout and
//! diagnostics to stderr. Exit codes: 0 success, 1 internal invariant
//! failure, 2 usage error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, CycNumber};
use crate::groupcat::GroupSpec;
use crate::hwchar::{drinfeld_polynomials, freudenthal, weylkac_oracle};
use crate::mckay::to_dot;
use crate::rootsys::{reconstruct_g_dim, root_system, DimVector};
use crate::strata::{enumerate_strata, fiber_decomposition, StratumLabel};
use crate::{character_table, mckay_quiver, McKayData};

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "MCKAY_CACHE";

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "Exact McKay correspondence toolkit")]
struct Cli {
    /// Bypass the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full group dump: elements, multiplication table, classes.
    Group { spec: String },
    /// Exact character table.
    Chartab { spec: String },
    /// McKay quiver and affine Cartan data.
    Quiver {
        spec: String,
        #[arg(long)]
        dot: bool,
    },
    /// Positive roots of the finite root system.
    Roots { spec: String },
    /// Dimension of the finite Lie algebra rebuilt from the M(v) with v_0 = 1.
    Dimg { spec: String },
    /// Weight multiplicities of L(w) up to a height window.
    Char {
        spec: String,
        #[arg(long, value_name = "w0,w1,...")]
        hw: String,
        #[arg(long)]
        depth: usize,
        /// Also run the Weyl-Kac oracle and fail on any disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Stratum labels of the fixed-point set.
    Strata {
        spec: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_name = "w0,w1,...")]
        w: Option<String>,
    },
    /// Fiber decomposition over a stratum.
    Fiber {
        spec: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        v0: String,
        #[arg(long, default_value = "")]
        lam: String,
    },
    /// Drinfeld polynomials from per-vertex eigenvalues, e.g. `--eigs "2,1/3;;z4^1"`.
    Drinfeld {
        #[arg(long, allow_hyphen_values = true)]
        eigs: String,
    },
}

/// JSON with `", "` and `": "` separators on a single line.
struct SpacedFormatter;

impl serde_json::ser::Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SpacedFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub format_version: u32,
    /// Serialized [`CachedPipeline`].
    pub payload: String,
}

#[derive(Serialize, Deserialize)]
struct CachedPipeline {
    group: crate::FiniteSubgroup,
    table: crate::CharacterTable,
    cartan: crate::CartanData,
}

/// Serialization of freshly computed data, as stored in the cache.
pub fn pipeline_payload(data: &McKayData) -> Result<String> {
    Ok(serde_json::to_string(&CachedPipeline {
        group: data.group.clone(),
        table: data.table.clone(),
        cartan: data.cartan.clone(),
    })?)
}

pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("mckay");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("mckay");
    }
    std::env::temp_dir().join("mckay-cache")
}

fn cache_path(dir: &Path, spec: GroupSpec) -> PathBuf {
    let key = spec.to_string().replace(':', "_");
    dir.join(format!("{key}.v{FORMAT_VERSION}.json"))
}

/// Read a cache entry; any mismatch or corruption is a miss.
pub fn cache_load(dir: &Path, spec: GroupSpec) -> Option<(McKayData, String)> {
    let text = std::fs::read_to_string(cache_path(dir, spec)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.key != spec.to_string() || entry.format_version != FORMAT_VERSION {
        return None;
    }
    let cached: CachedPipeline = serde_json::from_str(&entry.payload).ok()?;
    if cached.group.spec != spec || cached.group.validate().is_err() {
        return None;
    }
    let data = McKayData { group: cached.group, table: cached.table, cartan: cached.cartan };
    Some((data, entry.payload))
}

pub fn cache_store(dir: &Path, spec: GroupSpec, data: &McKayData) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        key: spec.to_string(),
        format_version: FORMAT_VERSION,
        payload: pipeline_payload(data)?,
    };
    let path = cache_path(dir, spec);
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(&entry)?)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

/// Compute (or fetch from the cache) everything derived from one group.
pub fn load_or_compute(spec: GroupSpec, cache: Option<&Path>, err: &mut dyn Write) -> Result<McKayData> {
    if let Some(dir) = cache {
        if let Some((data, _)) = cache_load(dir, spec) {
            return Ok(data);
        }
    }
    let group = crate::build_group(spec)?;
    let table = character_table(&group)?;
    let cartan = mckay_quiver(&table)?;
    let data = McKayData { group, table, cartan };
    if let Some(dir) = cache {
        if let Err(e) = cache_store(dir, spec, &data) {
            let _ = writeln!(err, "warning: could not write cache in {}: {e}", dir.display());
        }
    }
    Ok(data)
}

fn parse_int_list(s: &str, what: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{what}: '{x}' is not an integer")))
        })
        .collect()
}

/// An eigenvalue: a rational `p/q`, or `zN^k` for a root of unity, optionally scaled as `c*zN^k`.
fn parse_eigenvalue(s: &str) -> Result<CycNumber> {
    let s = s.trim();
    let (coeff, root) = match s.split_once('*') {
        Some((c, r)) => (Some(c), r),
        None if s.starts_with('z') || s.starts_with("-z") => (None, s),
        None => return Ok(CycNumber::from_rational(parse_rational(s)?)),
    };
    let (sign, root) = match root.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, root),
    };
    let bad = || Error::Parse(format!("invalid eigenvalue '{s}'"));
    let body = root.strip_prefix('z').ok_or_else(bad)?;
    let (n, k) = body.split_once('^').unwrap_or((body, "1"));
    let n: u64 = n.parse().map_err(|_| bad())?;
    let k: i64 = k.parse().map_err(|_| bad())?;
    let mut value = CycNumber::root_of_unity(n, k)?;
    if sign < 0 {
        value = -value;
    }
    if let Some(c) = coeff {
        value = value.scale(&parse_rational(c)?);
    }
    Ok(value)
}

fn parse_eigs(s: &str) -> Result<Vec<Vec<CycNumber>>> {
    s.split(';')
        .map(|group| {
            group
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(parse_eigenvalue)
                .collect()
        })
        .collect()
}

fn parse_spec(s: &str) -> Result<GroupSpec> {
    s.parse()
}

fn usage_like(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownSpec(_)
            | Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::OutOfScope(_)
            | Error::FramingMismatch(..)
    )
}

#[derive(Serialize)]
struct GroupDump<'a> {
    format_version: u32,
    spec: GroupSpec,
    order: usize,
    exponent: usize,
    identity_index: usize,
    elements: &'a [crate::GroupElement],
    element_orders: &'a [usize],
    mult_table: &'a [Vec<usize>],
    inverse_map: &'a [usize],
    classes: &'a [Vec<usize>],
    class_reps: &'a [usize],
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    format_version: u32,
    #[serde(flatten)]
    inner: &'a T,
}

#[derive(Serialize)]
struct RootsDump {
    spec: GroupSpec,
    #[serde(rename = "type")]
    finite_type: String,
    rank: usize,
    /// Irrep index of each coordinate.
    vertices: Vec<usize>,
    /// Standard label of each coordinate.
    labels: Vec<usize>,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
}

#[derive(Serialize)]
struct DimG {
    dim_g: usize,
    #[serde(rename = "type")]
    ade_type: String,
}

/// Run the CLI on `argv` (including the program name). Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage_like(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cache_dir = (!cli.no_cache).then(default_cache_dir);
    let cache = cache_dir.as_deref();
    let load = |spec: &str, err: &mut dyn Write| load_or_compute(parse_spec(spec)?, cache, err);

    match cli.command {
        Command::Group { spec } => {
            let data = load(&spec, err)?;
            let g = &data.group;
            let dump = GroupDump {
                format_version: FORMAT_VERSION,
                spec: g.spec,
                order: g.order(),
                exponent: g.exponent,
                identity_index: g.identity_index,
                elements: &g.elements,
                element_orders: &g.element_orders,
                mult_table: &g.mult_table,
                inverse_map: &g.inverse_map,
                classes: &g.classes,
                class_reps: &g.class_reps,
            };
            writeln!(out, "{}", to_json(&dump)?)?;
        }
        Command::Chartab { spec } => {
            let data = load(&spec, err)?;
            let v = Versioned { format_version: FORMAT_VERSION, inner: &data.table };
            writeln!(out, "{}", to_json(&v)?)?;
        }
        Command::Quiver { spec, dot } => {
            let data = load(&spec, err)?;
            if dot {
                write!(out, "{}", to_dot(&data.cartan))?;
            } else {
                let v = Versioned { format_version: FORMAT_VERSION, inner: &data.cartan };
                writeln!(out, "{}", to_json(&v)?)?;
            }
        }
        Command::Roots { spec } => {
            let data = load(&spec, err)?;
            let roots = root_system(&data.cartan)?;
            let dump = RootsDump {
                spec: data.group.spec,
                finite_type: data.cartan.ade_type.finite_name(),
                rank: roots.rank,
                labels: roots.vertices.iter().map(|&v| data.cartan.standard_labeling[v]).collect(),
                vertices: roots.vertices.clone(),
                highest_root: roots.highest_root().to_vec(),
                positive_roots: roots.positive_roots,
            };
            writeln!(out, "{}", to_json(&dump)?)?;
        }
        Command::Dimg { spec } => {
            let data = load(&spec, err)?;
            let dim = DimG {
                dim_g: reconstruct_g_dim(&data.cartan)?,
                ade_type: data.cartan.ade_type.to_string(),
            };
            writeln!(out, "{}", to_json(&dim)?)?;
        }
        Command::Char { spec, hw, depth, oracle } => {
            let data = load(&spec, err)?;
            let w = parse_int_list(&hw, "--hw")?;
            let table = freudenthal(&w, &data.cartan, depth)?;
            if oracle {
                let check = weylkac_oracle(&w, &data.cartan, depth)?;
                if check != table {
                    writeln!(err, "error: Freudenthal and Weyl-Kac tables disagree")?;
                    writeln!(err, "freudenthal: {}", to_json(&table)?)?;
                    writeln!(err, "weyl-kac:    {}", to_json(&check)?)?;
                    return Ok(1);
                }
            }
            writeln!(out, "{}", to_json(&table)?)?;
        }
        Command::Strata { spec, n, w } => {
            let data = load(&spec, err)?;
            let cd = &data.cartan;
            let w = match w {
                Some(w) => parse_int_list(&w, "--w")?,
                None => {
                    let mut w = vec![0; cd.vertex_count];
                    w[cd.trivial_vertex] = 1;
                    w
                }
            };
            let labels = enumerate_strata(n, &w, cd)?;
            writeln!(out, "{}", to_json(&labels)?)?;
        }
        Command::Fiber { spec, v, w, v0, lam } => {
            let data = load(&spec, err)?;
            let cd = &data.cartan;
            let v = DimVector::new(parse_int_list(&v, "--v")?)?;
            let w = parse_int_list(&w, "--w")?;
            let v0 = DimVector::new(parse_int_list(&v0, "--v0")?)?;
            let lam: Vec<u64> = parse_int_list(&lam, "--lam")?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::Parse("--lam: parts must be positive".into())))
                .collect::<Result<_>>()?;
            let label = StratumLabel { candidate: v0.height() > 0, v0, lam, residual: 0 };
            let fiber = fiber_decomposition(&v, &w, &label, cd)?;
            writeln!(out, "{}", to_json(&fiber)?)?;
        }
        Command::Drinfeld { eigs } => {
            let data = drinfeld_polynomials(&parse_eigs(&eigs)?)?;
            writeln!(out, "{}", to_json(&data)?)?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_syntax() {
        assert_eq!(parse_eigenvalue("3").unwrap(), CycNumber::from_integer(3));
        assert_eq!(parse_eigenvalue("-1/2").unwrap().to_string(), "-1/2");
        assert_eq!(parse_eigenvalue("z4").unwrap(), CycNumber::root_of_unity(4, 1).unwrap());
        assert_eq!(parse_eigenvalue("-z3^2").unwrap(), -CycNumber::root_of_unity(3, 2).unwrap());
        assert_eq!(
            parse_eigenvalue("2*z8^3").unwrap(),
            CycNumber::root_of_unity(8, 3).unwrap().scale(&parse_rational("2").unwrap())
        );
        assert!(parse_eigenvalue("z0").is_err());
        assert!(parse_eigenvalue("q5").is_err());
        let groups = parse_eigs("1,2;;z4").unwrap();
        assert_eq!(groups.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 0, 1]);
    }

    #[test]
    fn spaced_json() {
        #[derive(Serialize)]
        struct T {
            a: Vec<i32>,
            b: &'static str,
        }
        assert_eq!(to_json(&T { a: vec![1, 2], b: "x" }).unwrap(), r#"{"a": [1, 2], "b": "x"}"#);
    }
}
