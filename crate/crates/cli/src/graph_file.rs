//! JSON file formats for labeled graphs and plain multigraphs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use schreier_core::{Alphabet, Multigraph, SLabeledGraph};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"basepoint"?, "letters", "n", "perms"}`. Field order is alphabetical
/// so that plain serialization is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
    pub letters: Vec<String>,
    pub n: usize,
    pub perms: BTreeMap<String, Vec<usize>>,
}

/// `{"edges": [[u, v], ...], "n"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultigraphFile {
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
}

impl GraphFile {
    pub fn from_graph(g: &SLabeledGraph, basepoint: Option<usize>) -> GraphFile {
        let letters = g.alphabet().names().to_vec();
        let perms = letters
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), g.perm(i).to_vec()))
            .collect();
        GraphFile {
            basepoint,
            letters,
            n: g.vertex_count(),
            perms,
        }
    }

    pub fn parse(text: &str, origin: &str) -> Result<GraphFile, CliError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.into(),
            line: e.line(),
            reason: e.to_string(),
        })?;
        let perms_at = text.find("\"perms\"").unwrap_or(0);
        let line_of = |name: &str| {
            let key = format!("\"{name}\"");
            let at = text[perms_at..].find(&key).map_or(perms_at, |i| perms_at + i);
            text[..at].matches('\n').count() + 1
        };
        for name in &file.letters {
            match file.perms.get(name) {
                None => {
                    return Err(CliError::Parse {
                        origin: origin.into(),
                        line: line_of("perms"),
                        reason: format!("no permutation for letter {name:?}"),
                    })
                }
                Some(p) if p.len() != file.n => {
                    return Err(CliError::Parse {
                        origin: origin.into(),
                        line: line_of(name),
                        reason: format!("permutation {name:?} has length {}, expected {}", p.len(), file.n),
                    })
                }
                Some(_) => {}
            }
        }
        if let Some(extra) = file.perms.keys().find(|k| !file.letters.contains(k)) {
            return Err(CliError::Parse {
                origin: origin.into(),
                line: line_of(extra),
                reason: format!("permutation for undeclared letter {extra:?}"),
            });
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<GraphFile, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        GraphFile::parse(&text, &path.display().to_string())
    }

    pub fn to_graph(&self) -> Result<SLabeledGraph, CliError> {
        let alphabet = Alphabet::new(self.letters.iter().cloned()).map_err(CliError::Validation)?;
        let perms = self.letters.iter().map(|l| self.perms[l].clone()).collect();
        let g = SLabeledGraph::new(self.n, alphabet, perms).map_err(CliError::Validation)?;
        if let Some(b) = self.basepoint {
            g.check_vertex(b).map_err(CliError::Validation)?;
        }
        Ok(g)
    }

    /// Sorted keys, no whitespace, trailing newline.
    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

impl MultigraphFile {
    pub fn from_multigraph(m: &Multigraph) -> MultigraphFile {
        MultigraphFile {
            edges: m.edges().to_vec(),
            n: m.vertex_count(),
        }
    }

    pub fn read(path: &Path) -> Result<MultigraphFile, CliError> {
        let origin = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: origin.clone(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            origin,
            line: e.line(),
            reason: e.to_string(),
        })
    }

    pub fn to_multigraph(&self) -> Result<Multigraph, CliError> {
        Multigraph::new(self.n, self.edges.clone()).map_err(CliError::Validation)
    }

    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// A graph file path, or one of the built-in names `bouquetK`, `cycleN`
/// and `tower4` (the 4-vertex, 2-letter start of the glued tower).
pub fn load_graph(spec: &str) -> Result<(SLabeledGraph, Option<usize>), CliError> {
    let numbered = |prefix: &str| spec.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    if let Some(k) = numbered("bouquet") {
        return Ok((SLabeledGraph::bouquet(k), None));
    }
    if let Some(n) = numbered("cycle").filter(|&n| n > 0) {
        return Ok((SLabeledGraph::cycle(n), None));
    }
    if spec == "tower4" {
        let g = SLabeledGraph::new(4, Alphabet::standard(2), vec![vec![1, 2, 3, 0], vec![2, 0, 3, 1]])
            .map_err(CliError::Validation)?;
        return Ok((g, None));
    }
    let file = GraphFile::read(Path::new(spec))?;
    Ok((file.to_graph()?, file.basepoint))
}
