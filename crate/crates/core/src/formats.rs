//! graph6 / sparse6 codecs and DOT export.
//!
//! Both codecs follow the nauty format description: vertex counts use the
//! 1-, 4- or 8-byte `N(n)` header, and payload bits are packed six per byte,
//! most significant first, offset by 63.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_N: usize = (1 << 36) - 1;

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= MAX_N, "graph6 cannot encode {n} vertices");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let six = |b: u8| -> Result<usize> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(Error::Parse(format!("byte {b:#04x} is outside the printable range 63..=126")))
        }
    };
    let read = |bytes: &[u8], k: usize| -> Result<usize> {
        if bytes.len() < k {
            return Err(Error::Parse("truncated vertex count".into()));
        }
        bytes[..k].iter().try_fold(0usize, |acc, &b| Ok((acc << 6) | six(b)?))
    };
    match bytes {
        [] => Err(Error::Parse("empty input".into())),
        [126, 126, rest @ ..] => Ok((read(rest, 6)?, &rest[6..])),
        [126, rest @ ..] => Ok((read(rest, 3)?, &rest[3..])),
        [b, rest @ ..] => Ok((six(*b)?, rest)),
    }
}

struct BitWriter {
    out: Vec<u8>,
    x: u8,
    k: u32,
}

impl BitWriter {
    fn new(out: Vec<u8>) -> Self {
        BitWriter { out, x: 0, k: 0 }
    }

    fn push(&mut self, bit: bool) {
        self.x = (self.x << 1) | bit as u8;
        self.k += 1;
        if self.k == 6 {
            self.out.push(self.x + 63);
            self.x = 0;
            self.k = 0;
        }
    }

    fn push_bits(&mut self, value: usize, width: u32) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }
}

/// graph6 encoding of `g`, without a trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_n(n, &mut out);
    let mut w = BitWriter::new(out);
    for j in 1..n {
        for i in 0..j {
            w.push(g.has_edge(i, j));
        }
    }
    while w.k != 0 {
        w.push(false);
    }
    String::from_utf8(w.out).expect("printable ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let (n, body) = decode_n(s.as_bytes())?;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body for {n} vertices needs {} bytes, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[idx / 6];
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("byte {b:#04x} is outside the printable range 63..=126")));
            }
            if ((b - 63) >> (5 - idx % 6)) & 1 == 1 {
                g.insert_edge(i, j);
            }
            idx += 1;
        }
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b:#04x} is outside the printable range 63..=126")));
    }
    Ok(g)
}

/// Bits needed to write a vertex id below `n`.
fn id_width(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

/// sparse6 encoding of `g` (leading `:`), without a trailing newline.
pub fn to_sparse6(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    let nb = id_width(n);
    let mut w = BitWriter::new(out);
    let mut last = 0usize;
    for j in 0..n {
        for i in g.neighbors(j).ones().take_while(|&i| i < j) {
            if j == last {
                w.push(false);
            } else {
                w.push(true);
                if j > last + 1 {
                    w.push_bits(j, nb);
                    w.push(false);
                }
                last = j;
            }
            w.push_bits(i, nb);
        }
    }
    if w.k != 0 {
        let k = 6 - w.k;
        // Padding must not decode as an extra edge; see the nauty format notes.
        if nb < 6 && k > nb && n >= 2 && last == n - 2 && n == 1 << nb {
            w.push(false);
        }
        while w.k != 0 {
            w.push(true);
        }
    }
    String::from_utf8(w.out).expect("printable ascii")
}

pub fn from_sparse6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>sparse6<<").unwrap_or(s);
    let body = s
        .strip_prefix(':')
        .ok_or_else(|| Error::Parse("sparse6 input must start with ':'".into()))?;
    let (n, data) = decode_n(body.as_bytes())?;
    let nb = id_width(n) as usize;
    let mut bits = Vec::with_capacity(data.len() * 6);
    for &b in data {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("byte {b:#04x} is outside the printable range 63..=126")));
        }
        for i in (0..6).rev() {
            bits.push(((b - 63) >> i) & 1 == 1);
        }
    }
    let mut g = Graph::empty(n);
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + nb <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + nb].iter().fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
        pos += 1 + nb;
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(Error::Parse(format!("self-loop at vertex {x}")));
        } else {
            g.insert_edge(x, v);
        }
    }
    Ok(g)
}

/// Decodes a graph6 or sparse6 string, recognising optional `>>…<<` headers.
pub fn parse_graph(s: &str) -> Result<Graph> {
    let t = s.trim();
    if t.starts_with(">>sparse6<<") || t.starts_with(':') {
        from_sparse6(t)
    } else if t.starts_with(';') {
        Err(Error::Parse("incremental sparse6 is not supported".into()))
    } else if t.starts_with('&') || t.starts_with(">>digraph6<<") {
        Err(Error::Parse("digraph6 is not supported; graphs are undirected".into()))
    } else {
        from_graph6(t)
    }
}

/// One graph per non-empty line.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

/// DOT text listing every vertex and edge; layout is left to the renderer.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        // Same cycle drawn as a pentagram.
        let c5 = from_graph6("DUW").unwrap();
        assert_eq!(c5.edges(), vec![(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn graph6_multibyte_size() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(from_graph6(""), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("Dh"), Err(Error::Parse(_))));
        assert!(matches!(from_graph6("D\u{7f}c"), Err(Error::Parse(_))));
    }

    #[test]
    fn sparse6_known_strings() {
        // Example from the format description: 7 vertices.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (5, 6)]).unwrap();
        assert_eq!(to_sparse6(&g), ":Fa@x^");
        assert_eq!(from_sparse6(":Fa@x^").unwrap(), g);
    }

    #[test]
    fn sparse6_padding_special_case() {
        // n = 2^nb with the last edge ending at n - 2.
        for n in [2usize, 4, 8, 16] {
            let g = Graph::from_edges(n, &[(0, n - 2)]).unwrap_or_else(|_| Graph::empty(n));
            assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g, "n = {n}");
        }
    }

    #[test]
    fn dispatch_and_dot() {
        assert_eq!(parse_graph(&to_sparse6(&Graph::cycle(6))).unwrap(), Graph::cycle(6));
        assert!(parse_graph("&B?").is_err());
        let gs = parse_graphs("Dhc\n\nC~\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert!(to_dot(&Graph::path(2)).contains("0 -- 1;"));
    }
}
