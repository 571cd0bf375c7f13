use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;

use super::{Graph, NetworkSample};
use crate::error::{Error, Result};

/// What was dropped while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub report: LoadReport,
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let loaded = parse_edge_list(&text, path)?;
    if loaded.report != LoadReport::default() {
        warn!(
            "{}: dropped {} self-loop(s) and {} duplicate edge(s)",
            path.display(),
            loaded.report.self_loops,
            loaded.report.duplicates
        );
    }
    Ok(loaded)
}

/// Parses edge-list text. `origin` is only used in error messages.
///
/// Each non-comment line holds two vertex tokens (an edge) or one token (a
/// vertex, possibly isolated). Tokens are indexed by first appearance.
pub fn parse_edge_list(text: &str, origin: &Path) -> Result<LoadedGraph> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let mut ids = [0usize; 2];
        if tokens.len() > 2 {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                line: lineno + 1,
                message: format!("expected 1 or 2 vertex tokens, found {}", tokens.len()),
            });
        }
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = *index.entry(tok).or_insert_with(|| {
                names.push(tok.to_string());
                names.len() - 1
            });
        }
        if tokens.len() == 2 {
            edges.push((ids[0], ids[1]));
        }
    }

    if names.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (graph, edge_report) = Graph::from_edges(names.len(), edges)?;
    Ok(LoadedGraph {
        graph: graph.with_names(names)?,
        report: LoadReport {
            self_loops: edge_report.self_loops,
            duplicates: edge_report.duplicates,
        },
    })
}

/// Writes `g` in edge-list format. Vertices without neighbors are written as
/// lone tokens so that reading the file back yields the same vertex set.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let name = |v: usize| -> String {
        g.vertex_name(v)
            .map(str::to_owned)
            .unwrap_or_else(|| v.to_string())
    };
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(out, "{}", name(v))?;
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", name(u), name(v))?;
    }
    Ok(())
}

/// Reads a CSV manifest with columns `id,path[,label]`. Relative paths are
/// resolved against the manifest's directory.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<NetworkSample> {
    let path = path.as_ref();
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;

    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let (id_col, path_col) = match (column("id"), column("path")) {
        (Some(i), Some(p)) => (i, p),
        _ => {
            return Err(Error::Manifest {
                row: 0,
                message: "header must contain `id` and `path` columns".into(),
            })
        }
    };
    let label_col = column("label");

    let mut graphs = Vec::new();
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Manifest {
            row,
            message: e.to_string(),
        })?;
        let field = |col: usize| record.get(col).unwrap_or("").to_string();
        let id = field(id_col);
        if ids.contains(&id) {
            return Err(Error::DuplicateId(id));
        }
        let graph_path: PathBuf = base.join(field(path_col));
        let loaded = load_edge_list(&graph_path).map_err(|e| Error::Manifest {
            row,
            message: e.to_string(),
        })?;
        graphs.push(loaded.graph.with_label(id.clone()));
        ids.push(id);
        if let Some(col) = label_col {
            labels.push(field(col));
        }
    }
    if graphs.is_empty() {
        return Err(Error::Manifest {
            row: 0,
            message: "manifest lists no graphs".into(),
        });
    }
    NetworkSample::new(graphs, ids, label_col.map(|_| labels))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    }
}
