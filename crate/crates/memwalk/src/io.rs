//! Plain-text formats for graphs, walk tables, and distribution output.
//!
//! Every format is line oriented: blank lines and lines starting with `#`
//! are skipped, tokens are whitespace separated, and the first data line is
//! a size header. Parse errors carry the 1-based line number of the
//! offending line. Writers emit exactly what the parsers accept, and float
//! formatting round-trips, so write-then-read is the identity.
//!
//! Coin values are 1-based on disk (matching the usual numbering of the
//! classes) and 0-based in memory.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{GraphError, RegularDigraph};
use crate::partition::{ArcSuccessor, CoinShiftFunction, ShapeError, VertexPartition};
use crate::szegedy::{SzegedyError, TransitionAmplitudes};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Amplitudes(#[from] SzegedyError),
}

fn format_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Format {
        line,
        message: message.into(),
    }
}

/// Data lines with their 1-based line numbers; comments and blanks skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T>(line_no: usize, line: &str, expected: usize, what: &str) -> Result<Vec<T>, IoError>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(format_err(
            line_no,
            format!("expected {expected} {what}, got {}", fields.len()),
        ));
    }
    fields
        .into_iter()
        .map(|f| {
            f.parse().map_err(|e| format_err(line_no, format!("bad value {f:?}: {e}")))
        })
        .collect()
}

fn take_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    count: usize,
    last_line: &mut usize,
    what: &str,
) -> Result<Vec<(usize, &'a str)>, IoError> {
    let mut rows = Vec::with_capacity(count);
    for k in 0..count {
        match lines.next() {
            Some((no, line)) => {
                *last_line = no;
                rows.push((no, line));
            }
            None => {
                return Err(format_err(
                    *last_line + 1,
                    format!("file ends after {k} of {count} {what}"),
                ))
            }
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(format_err(no, format!("trailing data after {count} {what}")));
    }
    Ok(rows)
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    fields: usize,
    what: &str,
) -> Result<(usize, Vec<usize>), IoError> {
    match lines.next() {
        Some((no, line)) => Ok((no, parse_fields(no, line, fields, what)?)),
        None => Err(format_err(1, "empty file")),
    }
}

/// Parse a graph: header `n m`, then `n * m` lines of `tail head`.
pub fn parse_graph(text: &str) -> Result<RegularDigraph, IoError> {
    let mut lines = data_lines(text);
    let (mut last, head) = header(&mut lines, 2, "header fields (n m)")?;
    let (n, m) = (head[0], head[1]);
    let rows = take_rows(&mut lines, n * m, &mut last, "arcs")?;
    let mut arcs = Vec::with_capacity(n * m);
    for (no, line) in rows {
        let f: Vec<usize> = parse_fields(no, line, 2, "fields (tail head)")?;
        arcs.push((f[0], f[1]));
    }
    Ok(RegularDigraph::from_arcs(n, m, arcs)?)
}

pub fn graph_to_string(g: &RegularDigraph) -> String {
    let mut out = format!(
        "# regular digraph: {} vertices, out-degree {}, one arc per line\n{} {}\n",
        g.n_vertices(),
        g.degree(),
        g.n_vertices(),
        g.degree()
    );
    for &(t, h) in g.arcs() {
        writeln!(out, "{t} {h}").unwrap();
    }
    out
}

/// Parse a vertex partition for `graph`: header `n m`, then one row per
/// vertex listing the successor in each class.
pub fn parse_partition(
    text: &str,
    graph: Arc<RegularDigraph>,
) -> Result<VertexPartition, IoError> {
    let mut lines = data_lines(text);
    let (mut last, head) = header(&mut lines, 2, "header fields (n m)")?;
    let (n, m) = (head[0], head[1]);
    if n != graph.n_vertices() || m != graph.degree() {
        return Err(format_err(
            last,
            format!(
                "header says {n} vertices of degree {m}, graph has {} of degree {}",
                graph.n_vertices(),
                graph.degree()
            ),
        ));
    }
    let raw = take_rows(&mut lines, n, &mut last, "partition rows")?;
    let mut rows = Vec::with_capacity(n);
    for (no, line) in raw {
        rows.push(parse_fields(no, line, m, "successor vertices")?);
    }
    Ok(VertexPartition::new(graph, rows)?)
}

pub fn partition_to_string(p: &VertexPartition) -> String {
    let g = p.graph();
    let (n, m) = (g.n_vertices(), g.degree());
    let mut out = format!(
        "# vertex partition: row v lists the class-1..{m} successors of v\n{n} {m}\n"
    );
    for v in 0..n {
        let row: Vec<String> = (0..m).map(|c| p.successor(v, c).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Parse a coin shift table: header `n m`, then one row per vertex of
/// 1-based coin values.
pub fn parse_coin_shift(text: &str) -> Result<CoinShiftFunction, IoError> {
    let mut lines = data_lines(text);
    let (mut last, head) = header(&mut lines, 2, "header fields (n m)")?;
    let (n, m) = (head[0], head[1]);
    let raw = take_rows(&mut lines, n, &mut last, "coin rows")?;
    let mut table = Vec::with_capacity(n * m);
    for (no, line) in raw {
        for value in parse_fields::<usize>(no, line, m, "coin values")? {
            if value == 0 {
                return Err(format_err(no, "coin values are 1-based; got 0"));
            }
            table.push(value - 1);
        }
    }
    Ok(CoinShiftFunction::new(n, m, table)?)
}

pub fn coin_shift_to_string(gc: &CoinShiftFunction) -> String {
    let (n, m) = (gc.n_vertices(), gc.degree());
    let mut out = format!("# coin shift: row v maps coins 1..{m} to new coins (1-based)\n{n} {m}\n");
    for v in 0..n {
        let row: Vec<String> = (0..m).map(|c| (gc.get(v, c) + 1).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Parse an arc successor map: header `a` (the arc count), then one image
/// arc id per line, in source-arc order.
pub fn parse_arc_successor(
    text: &str,
    graph: Arc<RegularDigraph>,
) -> Result<ArcSuccessor, IoError> {
    let mut lines = data_lines(text);
    let (mut last, head) = header(&mut lines, 1, "header field (arc count)")?;
    let count = head[0];
    if count != graph.n_arcs() {
        return Err(format_err(
            last,
            format!("header says {count} arcs, graph has {}", graph.n_arcs()),
        ));
    }
    let raw = take_rows(&mut lines, count, &mut last, "arc images")?;
    let mut next = Vec::with_capacity(count);
    for (no, line) in raw {
        next.push(parse_fields::<usize>(no, line, 1, "arc image")?[0]);
    }
    Ok(ArcSuccessor::new(graph, next)?)
}

pub fn arc_successor_to_string(f: &ArcSuccessor) -> String {
    let count = f.graph().n_arcs();
    let mut out = format!("# arc successor: line k is the image of arc k\n{count}\n");
    for a in 0..count {
        writeln!(out, "{}", f.next(a)).unwrap();
    }
    out
}

/// Parse per-arc transition amplitudes: header `a`, then `tail head re im`
/// with every arc of the graph appearing exactly once.
///
/// Bundle normalization is deliberately not checked here; callers decide
/// whether to enforce it or to report it.
pub fn parse_amplitudes(
    text: &str,
    graph: Arc<RegularDigraph>,
) -> Result<TransitionAmplitudes, IoError> {
    let mut lines = data_lines(text);
    let (mut last, head) = header(&mut lines, 1, "header field (arc count)")?;
    let count = head[0];
    if count != graph.n_arcs() {
        return Err(format_err(
            last,
            format!("header says {count} arcs, graph has {}", graph.n_arcs()),
        ));
    }
    let raw = take_rows(&mut lines, count, &mut last, "amplitude lines")?;
    let mut alpha = vec![Complex64::new(0.0, 0.0); count];
    let mut seen = vec![false; count];
    for (no, line) in raw {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format_err(
                no,
                format!("expected 4 fields (tail head re im), got {}", fields.len()),
            ));
        }
        let t: usize = fields[0]
            .parse()
            .map_err(|e| format_err(no, format!("bad tail {:?}: {e}", fields[0])))?;
        let h: usize = fields[1]
            .parse()
            .map_err(|e| format_err(no, format!("bad head {:?}: {e}", fields[1])))?;
        let re: f64 = fields[2]
            .parse()
            .map_err(|e| format_err(no, format!("bad real part {:?}: {e}", fields[2])))?;
        let im: f64 = fields[3]
            .parse()
            .map_err(|e| format_err(no, format!("bad imaginary part {:?}: {e}", fields[3])))?;
        let arc = graph
            .arc_index(t, h)
            .ok_or_else(|| format_err(no, format!("({t}, {h}) is not an arc of the graph")))?;
        if std::mem::replace(&mut seen[arc], true) {
            return Err(format_err(no, format!("arc ({t}, {h}) appears twice")));
        }
        alpha[arc] = Complex64::new(re, im);
    }
    Ok(TransitionAmplitudes::from_arc_amplitudes_unchecked(graph, alpha)?)
}

pub fn amplitudes_to_string(t: &TransitionAmplitudes) -> String {
    let g = t.graph();
    let mut out = format!(
        "# transition amplitudes: tail head re im, one line per arc\n{}\n",
        g.n_arcs()
    );
    for (a, &(tail, head)) in g.arcs().iter().enumerate() {
        let z = t.alpha(a);
        writeln!(out, "{tail} {head} {} {}", z.re, z.im).unwrap();
    }
    out
}

/// Comma-separated time series: a header of position labels, then one row
/// of probabilities per time step. Formatting is plain `Display`, so equal
/// inputs produce byte-identical files.
pub fn distribution_csv(labels: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", labels.join(",")).unwrap();
    for row in rows {
        debug_assert_eq!(row.len(), labels.len());
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

pub fn read_graph(path: &Path) -> Result<RegularDigraph, IoError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_partition(
    path: &Path,
    graph: Arc<RegularDigraph>,
) -> Result<VertexPartition, IoError> {
    parse_partition(&std::fs::read_to_string(path)?, graph)
}

pub fn read_coin_shift(path: &Path) -> Result<CoinShiftFunction, IoError> {
    parse_coin_shift(&std::fs::read_to_string(path)?)
}

pub fn read_arc_successor(
    path: &Path,
    graph: Arc<RegularDigraph>,
) -> Result<ArcSuccessor, IoError> {
    parse_arc_successor(&std::fs::read_to_string(path)?, graph)
}

pub fn read_amplitudes(
    path: &Path,
    graph: Arc<RegularDigraph>,
) -> Result<TransitionAmplitudes, IoError> {
    parse_amplitudes(&std::fs::read_to_string(path)?, graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coined::build_qwm2;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graph_round_trips() {
        let g = RegularDigraph::cycle(6).unwrap();
        let text = graph_to_string(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.arcs(), g.arcs());
        assert_eq!(back.degree(), 2);
    }

    #[test]
    fn partition_and_shift_round_trip() {
        let (walk, _) = build_qwm2(6).unwrap();
        let g = Arc::clone(walk.graph());
        let p = parse_partition(&partition_to_string(walk.partition()), g).unwrap();
        for v in 0..p.graph().n_vertices() {
            for c in 0..2 {
                assert_eq!(p.successor(v, c), walk.partition().successor(v, c));
            }
        }
        let gc = parse_coin_shift(&coin_shift_to_string(walk.shift())).unwrap();
        for v in 0..gc.n_vertices() {
            for c in 0..2 {
                assert_eq!(gc.get(v, c), walk.shift().get(v, c));
            }
        }
    }

    #[test]
    fn coins_are_one_based_on_disk() {
        let (walk, _) = build_qwm2(4).unwrap();
        let text = coin_shift_to_string(walk.shift());
        // Identity table: every data row reads "1 2".
        let rows: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .skip(1)
            .collect();
        assert!(rows.iter().all(|r| *r == "1 2"));
        assert!(matches!(
            parse_coin_shift("2 2\n0 1\n1 2\n"),
            Err(IoError::Format { line: 2, .. })
        ));
    }

    #[test]
    fn truncation_is_reported_with_a_line_number() {
        let g = RegularDigraph::cycle(4).unwrap();
        let full = graph_to_string(&g);
        // Drop the last arc line (line 10: one comment, one header, 8 arcs).
        let truncated: String = full.lines().take(9).map(|l| format!("{l}\n")).collect();
        match parse_graph(&truncated) {
            Err(IoError::Format { line: 10, message }) => {
                assert!(message.contains("7 of 8"), "message: {message}");
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn bad_tokens_are_reported_with_a_line_number() {
        assert!(matches!(
            parse_graph("4 x\n"),
            Err(IoError::Format { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1\n0 2\n1 2\n1 zero\n2 0\n2 1\n"),
            Err(IoError::Format { line: 5, .. })
        ));
        let g = Arc::new(RegularDigraph::cycle(4).unwrap());
        assert!(matches!(
            parse_partition("4 2\n1 3\n2 0\n3 1\n", g.clone()),
            Err(IoError::Format { line: 5, .. })
        ));
        // Wrong header against the graph.
        assert!(matches!(
            parse_partition("5 2\n", g),
            Err(IoError::Format { line: 1, .. })
        ));
    }

    #[test]
    fn amplitude_lines_must_cover_each_arc_once() {
        let g = Arc::new(RegularDigraph::cycle(3).unwrap());
        let ok = "6\n0 1 1 0\n0 2 0 0\n1 2 0.6 0\n1 0 0 0.8\n2 0 1 0\n2 1 0 0\n";
        let t = parse_amplitudes(ok, g.clone()).unwrap();
        assert_eq!(t.alpha(g.arc_index(1, 0).unwrap()), Complex64::new(0.0, 0.8));
        assert!(t.check_normalized().is_ok());

        let non_arc = "6\n0 0 1 0\n0 2 0 0\n1 2 1 0\n1 0 0 0\n2 0 1 0\n2 1 0 0\n";
        assert!(matches!(
            parse_amplitudes(non_arc, g.clone()),
            Err(IoError::Format { line: 2, .. })
        ));

        let dup = "6\n0 1 1 0\n0 1 0 0\n1 2 1 0\n1 0 0 0\n2 0 1 0\n2 1 0 0\n";
        match parse_amplitudes(dup, g.clone()) {
            Err(IoError::Format { line: 3, message }) => {
                assert!(message.contains("twice"), "message: {message}");
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }

        // Unnormalized parses fine; the check is the caller's call.
        let lopsided = "6\n0 1 2 0\n0 2 0 0\n1 2 1 0\n1 0 0 0\n2 0 1 0\n2 1 0 0\n";
        let t = parse_amplitudes(lopsided, g).unwrap();
        assert!(t.check_normalized().is_err());
    }

    #[test]
    fn csv_has_label_header_and_plain_numbers() {
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let csv = distribution_csv(&labels, &[vec![0.0, 1.0, 0.0], vec![0.25, 0.5, 0.25]]);
        assert_eq!(csv, "0,1,2\n0,1,0\n0.25,0.5,0.25\n");
    }

    proptest! {
        /// Random graphs and their tables survive a write/read cycle.
        #[test]
        fn random_artifacts_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..9);
            let m = rng.gen_range(2..4).min(n - 1);
            let g = Arc::new(crate::fixtures::regular_digraph(&mut rng, n, m));
            let back = Arc::new(parse_graph(&graph_to_string(&g)).unwrap());
            prop_assert_eq!(back.arcs(), g.arcs());

            let p = crate::fixtures::partition(&mut rng, &g);
            let p2 = parse_partition(&partition_to_string(&p), back.clone()).unwrap();
            for v in 0..n {
                for c in 0..m {
                    prop_assert_eq!(p2.successor(v, c), p.successor(v, c));
                }
            }

            let t = crate::fixtures::arc_amplitudes(&mut rng, &g);
            let t2 = parse_amplitudes(&amplitudes_to_string(&t), back.clone()).unwrap();
            for a in 0..g.n_arcs() {
                prop_assert_eq!(t2.alpha(a), t.alpha(a));
            }
            prop_assert!(t2.check_normalized().is_ok());

            // A successor derived from the partition round-trips too.
            let gc = crate::fixtures::coin_shift(&mut rng, &p);
            let next: Vec<usize> = (0..g.n_arcs())
                .map(|a| {
                    let (v, w) = g.arc(a);
                    let c = (0..m).find(|&c| p.arc_of(v, c) == Some(a)).unwrap();
                    p.arc_of(w, gc.get(v, c)).unwrap()
                })
                .collect();
            let f = ArcSuccessor::new(Arc::clone(&g), next).unwrap();
            let f2 = parse_arc_successor(&arc_successor_to_string(&f), back).unwrap();
            prop_assert_eq!(f2.next_slice(), f.next_slice());
        }
    }
}
