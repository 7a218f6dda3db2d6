//! Path certificates and their checker.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    Hamiltonian,
    Induced,
}

impl PathKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PathKind::Hamiltonian => "hamiltonian",
            PathKind::Induced => "induced",
        }
    }
}

/// A vertex sequence claimed to be a path, with the text header
/// `hamiltonian|induced ell=<L> tree=<desc>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub kind: PathKind,
    pub ell: usize,
    pub tree: String,
    pub vertices: Vec<VertexId>,
}

impl PathCertificate {
    pub fn new(kind: PathKind, ell: usize, tree: impl Into<String>, vertices: Vec<VertexId>) -> Self {
        PathCertificate { kind, ell, tree: tree.into(), vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ell={} tree={}", self.kind.as_str(), self.ell, self.tree)?;
        for v in &self.vertices {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for PathCertificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidCertificate(m);
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let mut fields = header.split_whitespace();
        let kind = match fields.next() {
            Some("hamiltonian") => PathKind::Hamiltonian,
            Some("induced") => PathKind::Induced,
            other => return Err(bad(format!("header kind {other:?}"))),
        };
        let mut ell = None;
        let mut tree = None;
        for f in fields {
            match f.split_once('=') {
                Some(("ell", v)) => ell = Some(v.parse::<usize>().map_err(|e| bad(format!("ell: {e}")))?),
                Some(("tree", v)) => tree = Some(v.to_string()),
                _ => return Err(bad(format!("header field {f:?}"))),
            }
        }
        let vertices = lines
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| l.trim().parse::<VertexId>().map_err(|e| bad(format!("line {}: {e}", i + 2))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PathCertificate {
            kind,
            ell: ell.ok_or_else(|| bad("header lacks ell=".into()))?,
            tree: tree.ok_or_else(|| bad("header lacks tree=".into()))?,
            vertices,
        })
    }
}

/// Checks that `path` is a simple path of `g`; optionally that it covers
/// every vertex and that it has no chord.
pub fn check_path(g: &Graph, path: &[VertexId], require_hamiltonian: bool, require_induced: bool) -> Report {
    let n = g.vertex_count();
    let mut r = Report::new();
    let mut pos = vec![usize::MAX; n];
    let mut simple = None;
    for (i, &v) in path.iter().enumerate() {
        if v as usize >= n {
            simple = Some(json!({ "reason": "vertex out of range", "position": i, "vertex": v }));
            break;
        }
        if pos[v as usize] != usize::MAX {
            simple = Some(json!({ "reason": "not simple", "vertex": v, "positions": [pos[v as usize], i] }));
            break;
        }
        pos[v as usize] = i;
    }
    let is_simple = simple.is_none();
    r.push(Check::from_witness("simple", simple));
    if !is_simple {
        return r;
    }
    let gap = path.windows(2).position(|w| !g.has_edge(w[0], w[1]));
    r.push(Check::from_witness(
        "consecutive-adjacent",
        gap.map(|i| json!({ "reason": "missing edge", "edge": [path[i], path[i + 1]], "position": i })),
    ));
    if require_hamiltonian {
        let missing = pos.iter().position(|&p| p == usize::MAX);
        r.push(Check::from_witness(
            "covers-all-vertices",
            missing.map(|v| json!({ "missing": v, "covered": path.len(), "vertices": n })),
        ));
    }
    if require_induced {
        let chord = path.iter().enumerate().find_map(|(i, &v)| {
            g.neighbors(v).iter().find_map(|&w| {
                let j = pos[w as usize];
                (j != usize::MAX && j > i + 1).then(|| json!({ "reason": "chord", "chord": [v, w], "positions": [i, j] }))
            })
        });
        r.push(Check::from_witness("chordless", chord));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonian_path_of_a_cycle() {
        let g = Graph::cycle(5);
        assert!(check_path(&g, &[0, 1, 2, 3, 4], true, false).passed());
        // the closing edge 4-0 is a chord
        let r = check_path(&g, &[0, 1, 2, 3, 4], true, true);
        assert!(!r.get("chordless").unwrap().pass);
        assert!(check_path(&g, &[0, 1, 2, 3], false, true).passed());
    }

    #[test]
    fn failures() {
        let g = Graph::path(4);
        let r = check_path(&g, &[0, 1, 0], false, false);
        assert_eq!(r.get("simple").unwrap().counterexample.as_ref().unwrap()["reason"], "not simple");
        let r = check_path(&g, &[0, 2], false, false);
        assert!(!r.get("consecutive-adjacent").unwrap().pass);
        let r = check_path(&g, &[0, 1, 2], true, false);
        assert!(!r.get("covers-all-vertices").unwrap().pass);
        assert!(!check_path(&g, &[9], false, false).passed());
        let k3 = Graph::complete(3);
        let r = check_path(&k3, &[0, 1, 2], false, true);
        assert_eq!(r.get("chordless").unwrap().counterexample.as_ref().unwrap()["chord"], json!([0, 2]));
    }

    #[test]
    fn text_round_trip() {
        let c = PathCertificate::new(PathKind::Induced, 2, "complete", vec![4, 0, 17]);
        let text = c.to_string();
        assert!(text.starts_with("induced ell=2 tree=complete\n"));
        assert_eq!(text.parse::<PathCertificate>().unwrap(), c);
        assert!("walk ell=2 tree=x\n1\n".parse::<PathCertificate>().is_err());
        assert!("induced ell=2\n1\n".parse::<PathCertificate>().is_err());
        assert!("induced ell=2 tree=x\n1\nz\n".parse::<PathCertificate>().is_err());
    }
}
