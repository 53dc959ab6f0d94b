use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use bchromatic::graph::{generate, parse_dimacs, Family};
use bchromatic::{Coloring, Graph};

/// A graph argument: an existing file, `-` for DIMACS on stdin, or an inline
/// `family:p1,p2,...` spec such as `crown:4` or `T:`.
pub fn load_graph(arg: &str) -> Result<Graph> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(parse_dimacs(&text)?);
    }
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return parse_dimacs(&text).with_context(|| format!("parsing {arg}"));
    }
    let (name, params) = arg.split_once(':').unwrap_or((arg, ""));
    let family: Family = name
        .parse()
        .with_context(|| format!("`{arg}` is neither a file nor a family spec"))?;
    let params = parse_params(params)?;
    Ok(generate(family, &params)?)
}

pub fn family_graph(name: &str, params: &[u64]) -> Result<Graph> {
    let family: Family = name.parse()?;
    Ok(generate(family, params)?)
}

fn parse_params(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().with_context(|| format!("bad parameter `{s}`")))
        .collect()
}

fn read_ints(path: &str) -> Result<Vec<u64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    text.split_whitespace()
        .map(|s| s.parse().with_context(|| format!("{path}: bad integer `{s}`")))
        .collect()
}

pub fn load_coloring(path: &str) -> Result<Coloring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(Coloring::parse(&text)?)
}

/// Index-aligned colors with 0 marking a free vertex.
pub fn load_precoloring(path: &str) -> Result<BTreeMap<usize, u32>> {
    let mut pre = BTreeMap::new();
    for (v, c) in read_ints(path)?.into_iter().enumerate() {
        if c > u32::MAX as u64 {
            bail!("{path}: color {c} too large");
        }
        if c > 0 {
            pre.insert(v, c as u32);
        }
    }
    Ok(pre)
}

/// Index-aligned 0-based target vertices.
pub fn load_map(path: &str) -> Result<Vec<usize>> {
    Ok(read_ints(path)?.into_iter().map(|x| x as usize).collect())
}
