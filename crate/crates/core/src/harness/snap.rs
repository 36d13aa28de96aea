//! Edge-list reader for the plain-text format used by public graph
//! repositories: `#` comment lines, one undirected edge as two
//! whitespace-separated node labels per line.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SnapError {
    #[error("failed to read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: expected two whitespace-separated endpoints, got {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("edge list contains no usable edges")]
    NoEdges,
}

/// Parsed graph with labels renumbered to `0..node_count` in order of first
/// appearance. Self-loop lines register their node but contribute no edge;
/// repeated edges (either orientation) collapse to one.
#[derive(Debug, Clone)]
pub struct SnapGraph {
    pub node_count: usize,
    pub edges: Vec<(u32, u32)>,
}

fn intern<'a>(ids: &mut HashMap<&'a str, u32>, next_id: &mut u32, label: &'a str) -> u32 {
    *ids.entry(label).or_insert_with(|| {
        let id = *next_id;
        *next_id += 1;
        id
    })
}

pub fn parse_snap_text(text: &str) -> Result<SnapGraph, SnapError> {
    let mut ids: HashMap<&str, u32> = HashMap::new();
    let mut next_id = 0u32;
    let mut edges = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(SnapError::MalformedLine { line, found: trimmed.to_string() });
        };
        let u = intern(&mut ids, &mut next_id, a);
        let v = intern(&mut ids, &mut next_id, b);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    if edges.is_empty() {
        return Err(SnapError::NoEdges);
    }
    Ok(SnapGraph { node_count: next_id as usize, edges })
}

pub fn parse_snap_edge_list(path: &Path) -> Result<SnapGraph, SnapError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SnapError::Io { path: path.to_path_buf(), source })?;
    parse_snap_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_duplicates_and_self_loops_collapse() {
        let graph = parse_snap_text("# header\n1 2\n2 1\n1 1\n").unwrap();
        assert_eq!(graph.node_count, 2);
        assert_eq!(graph.edges, vec![(0, 1)]);
    }

    #[test]
    fn labels_number_by_first_appearance() {
        let graph = parse_snap_text("b a\na c\n").unwrap();
        // b=0, a=1, c=2; edges stored with the smaller id first.
        assert_eq!(graph.node_count, 3);
        assert_eq!(graph.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn self_loop_node_still_counts() {
        let graph = parse_snap_text("5 5\n1 2\n").unwrap();
        assert_eq!(graph.node_count, 3);
        assert_eq!(graph.edges, vec![(1, 2)]);
    }

    #[test]
    fn malformed_lines_carry_their_number() {
        for (text, bad_line) in [("1 2\n1 2 3\n", 2), ("# c\nlonely\n", 2), ("1\t2\n \n9\n", 3)] {
            match parse_snap_text(text) {
                Err(SnapError::MalformedLine { line, .. }) => assert_eq!(line, bad_line),
                other => panic!("expected malformed line, got {other:?}"),
            }
        }
    }

    #[test]
    fn empty_inputs_are_rejected() {
        for text in ["", "# only a comment\n", "3 3\n"] {
            assert!(matches!(parse_snap_text(text), Err(SnapError::NoEdges)), "{text:?}");
        }
    }

    #[test]
    fn tabs_and_padding_are_fine() {
        let graph = parse_snap_text("  0\t17 \n17  4\n").unwrap();
        assert_eq!(graph.node_count, 3);
        assert_eq!(graph.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn missing_file_reports_path() {
        let err = parse_snap_edge_list(Path::new("/nonexistent/graph.txt")).unwrap_err();
        assert!(matches!(err, SnapError::Io { .. }));
        assert!(err.to_string().contains("/nonexistent/graph.txt"));
    }
}
