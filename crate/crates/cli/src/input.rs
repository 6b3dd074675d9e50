use std::io::Read;
use std::path::Path;

use wordrep::formats::{parse_graph, parse_graphs};
use wordrep::{Error, Graph, Result};

/// Reads `-` from stdin, an existing path from disk, or returns the argument itself.
pub fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

/// A single graph in graph6 or sparse6; only the first non-empty line is read.
pub fn read_graph(arg: &str) -> Result<Graph> {
    let text = read_text(arg)?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Parse(format!("no graph in {arg:?}")))?;
    parse_graph(line)
}

pub fn read_corpus(arg: &str) -> Result<Vec<Graph>> {
    parse_graphs(&read_text(arg)?)
}

/// Edge list such as `0-1,1-2`; whitespace is ignored and the empty string is no edges.
pub fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split([',', ' '])
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("edge {t:?} is not of the form u-v")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("edge {t:?}: {e}")));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

/// Per-supervertex fill such as `2:0-1,1-2`.
pub fn parse_fill(s: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let (i, edges) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("fill {s:?} is not of the form index:edges")))?;
    let i = i.trim().parse().map_err(|e| Error::Parse(format!("fill {s:?}: {e}")))?;
    Ok((i, parse_edges(edges)?))
}
