use std::path::Path;

use rayleigh_kit::catalog::{enumerate_simple_rank3, named};
use rayleigh_kit::matroid::io::load_matroid;
use rayleigh_kit::matroid::{Elem, ElementSet, Matroid};
use rayleigh_kit::rayleigh::all_pairs;

use crate::Failure;

/// A loaded matroid and the name it is reported under.
pub struct Input {
    pub name: String,
    pub matroid: Matroid,
}

/// Resolves one command-line matroid argument.
///
/// An existing file is read as JSON. Otherwise the argument is a catalog name
/// (`K4`, `fig3.VII`, `U_3_5`) or `rank3:N`, which expands to every simple
/// rank-3 matroid on `N` points, named `rank3:N#i`.
pub fn resolve(arg: &str) -> Result<Vec<Input>, Failure> {
    if Path::new(arg).is_file() {
        let matroid = load_matroid(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
        return Ok(vec![Input { name: arg.to_string(), matroid }]);
    }
    if let Some(n) = arg.strip_prefix("rank3:") {
        let n: usize = n.parse().map_err(|_| Failure::usage(format!("{arg}: expected rank3:<n>")))?;
        let classes = enumerate_simple_rank3(n).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
        return Ok(classes
            .classes
            .into_iter()
            .enumerate()
            .map(|(i, matroid)| Input { name: format!("rank3:{n}#{}", i + 1), matroid })
            .collect());
    }
    let matroid = named(arg).map_err(|_| Failure::usage(format!("{arg}: no such file or catalog name")))?;
    Ok(vec![Input { name: arg.to_string(), matroid }])
}

pub fn resolve_all(args: &[String]) -> Result<Vec<Input>, Failure> {
    let mut out = Vec::new();
    for a in args {
        out.extend(resolve(a)?);
    }
    Ok(out)
}

/// The pairs to examine: those given with `--pairs`, else every pair.
pub fn select_pairs(m: &Matroid, name: &str, pairs: &[String]) -> Result<Vec<(Elem, Elem)>, Failure> {
    if pairs.is_empty() {
        return Ok(all_pairs(m));
    }
    pairs
        .iter()
        .map(|p| {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| Failure::usage(format!("--pairs {p}: expected e,f")))?;
            let e = m.elem(a.trim()).map_err(|err| Failure::usage(format!("{name}: {err}")))?;
            let f = m.elem(b.trim()).map_err(|err| Failure::usage(format!("{name}: {err}")))?;
            if e == f {
                return Err(Failure::usage(format!("--pairs {p}: elements must differ")));
            }
            Ok((e, f))
        })
        .collect()
}

pub fn pair_text(m: &Matroid, e: Elem, f: Elem) -> String {
    format!("{{{},{}}}", m.label(e), m.label(f))
}

pub fn set_text(m: &Matroid, s: ElementSet) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.iter().map(|x| m.label(x)).collect::<Vec<_>>().join(",")
    }
}
