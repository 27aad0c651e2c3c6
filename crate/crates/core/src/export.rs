//! Drawing exporters.
//!
//! Two emitters with different fidelity:
//!
//! * [`export_dot`] writes a GraphViz digraph. This is an approximation:
//!   the DOT dialect has no multi-tip arrows, so a length-λ edge becomes
//!   a small labeled vertex with λ outgoing arcs whose labels carry the
//!   position ordering.
//! * [`export_tikz`] writes TikZ commands that keep the geometric
//!   conventions: nodes are bullets, a length-λ edge is one polyline
//!   through its adjacencies where segment ι carries ι+1 arrow tips,
//!   and self-adjacencies become loops. Layout is a fixed circular
//!   embedding so output is byte-stable.
//!
//! Both take an optional typing morphism; typed edges are labeled
//! `name:type`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{EdgeId, Monograph};
use crate::morphism::Morphism;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExportError {
    /// The polyline convention draws ι+1 tips on segment ι, which stops
    /// being readable (and renderable) for very long edges.
    #[error("edge `{edge}` has length {len}, more than the 9 renderable tips")]
    TooManyTips { edge: EdgeId, len: usize },
}

fn label(e: &EdgeId, typing: Option<&Morphism>) -> String {
    match typing.and_then(|t| t.apply(e)) {
        Some(ty) => format!("{}:{}", e, ty),
        None => e.to_string(),
    }
}

fn dot_quote(s: &str) -> String {
    let escaped: String = s
        .chars()
        .flat_map(|c| match c {
            '"' | '\\' => vec!['\\', c],
            _ => vec![c],
        })
        .collect();
    format!("\"{}\"", escaped)
}

/// GraphViz rendering. Every edge of the monograph becomes a vertex:
/// nodes are points, longer edges are boxes with one position-labeled
/// arc per adjacency.
pub fn export_dot(m: &Monograph, typing: Option<&Morphism>) -> String {
    let mut out = String::from("digraph monograph {\n");
    for (e, seq) in m.iter() {
        let shape = if seq.is_empty() { "point" } else { "box" };
        let _ = writeln!(
            out,
            "  {} [shape={}, label={}];",
            dot_quote(e.as_str()),
            shape,
            dot_quote(&label(e, typing))
        );
    }
    for (e, seq) in m.iter() {
        for (i, t) in seq.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                dot_quote(e.as_str()),
                dot_quote(t.as_str()),
                i
            );
        }
    }
    out.push_str("}\n");
    out
}

/// TikZ rendering on a circle of fixed radius. Fails with
/// [`ExportError::TooManyTips`] when some edge is longer than 9.
pub fn export_tikz(m: &Monograph, typing: Option<&Morphism>) -> Result<String, ExportError> {
    for (e, seq) in m.iter() {
        if seq.len() > 9 {
            return Err(ExportError::TooManyTips {
                edge: e.clone(),
                len: seq.len(),
            });
        }
    }
    let ids: Vec<&EdgeId> = m.edge_ids().collect();
    let n = ids.len();
    let mut out = String::from("\\begin{tikzpicture}[>=stealth]\n");
    let pos = |k: usize| {
        let angle = if n == 0 {
            0.0
        } else {
            2.0 * std::f64::consts::PI * (k as f64) / (n as f64)
        };
        (2.0 * angle.cos(), 2.0 * angle.sin())
    };
    let index_of = |e: &EdgeId| ids.iter().position(|x| *x == e).expect("closure");
    for (k, e) in ids.iter().enumerate() {
        let (x, y) = pos(k);
        let _ = writeln!(out, "  \\coordinate (v{}) at ({:.3}, {:.3});", k, x, y);
        let _ = writeln!(
            out,
            "  \\node[anchor=south] at ({:.3}, {:.3}) {{{}}};",
            x,
            y + 0.15,
            label(e, typing)
        );
        if m.len_of(e) == Some(0) {
            let _ = writeln!(out, "  \\filldraw (v{}) circle (0.06);", k);
        }
    }
    for (k, e) in ids.iter().enumerate() {
        let seq = m.seq(e).expect("edge is present");
        // Segment ι runs from the previous waypoint to target ι and
        // carries ι+1 arrow tips.
        let mut from = k;
        for (i, t) in seq.iter().enumerate() {
            let to = index_of(t);
            let tips = "Stealth[] ".repeat(i + 1);
            if from == to {
                let _ = writeln!(
                    out,
                    "  \\draw[-{{{}}}] (v{}) to[loop above] (v{});",
                    tips.trim_end(),
                    from,
                    to
                );
            } else {
                let _ = writeln!(
                    out,
                    "  \\draw[-{{{}}}] (v{}) -- (v{});",
                    tips.trim_end(),
                    from,
                    to
                );
            }
            from = to;
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn single_node_is_one_point_vertex() {
        let m = Monograph::build(&[("n", &[])]).unwrap();
        let dot = export_dot(&m, None);
        assert!(dot.contains("\"n\" [shape=point, label=\"n\"];"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn graph_edge_gets_position_labeled_arcs() {
        let m = Monograph::build(&[("n1", &[]), ("n2", &[]), ("e", &["n1", "n2"])]).unwrap();
        let dot = export_dot(&m, None);
        assert!(dot.contains("\"e\" -> \"n1\" [label=\"0\"];"));
        assert!(dot.contains("\"e\" -> \"n2\" [label=\"1\"];"));
    }

    #[test]
    fn running_example_has_two_vertices_and_six_arcs() {
        let m = Monograph::build(&[("x", &["x", "y", "x"]), ("y", &["y", "x", "y"])]).unwrap();
        let dot = export_dot(&m, None);
        assert_eq!(dot.matches("[shape=").count(), 2);
        assert_eq!(dot.matches("->").count(), 6);
    }

    #[test]
    fn typing_labels_appear() {
        let t = Monograph::build(&[("s", &[])]).unwrap();
        let m = Monograph::build(&[("a", &[])]).unwrap();
        let typing = Morphism::new(
            m.clone(),
            t,
            BTreeMap::from([(EdgeId::from("a"), EdgeId::from("s"))]),
        )
        .unwrap();
        assert!(export_dot(&m, Some(&typing)).contains("label=\"a:s\""));
        assert!(export_tikz(&m, Some(&typing)).unwrap().contains("{a:s}"));
    }

    #[test]
    fn tikz_tip_counts_grow_along_the_polyline() {
        let m = Monograph::build(&[("n", &[]), ("e", &["n", "n", "n"])]).unwrap();
        let tikz = export_tikz(&m, None).unwrap();
        assert!(tikz.contains("-{Stealth[]}"));
        assert!(tikz.contains("-{Stealth[] Stealth[]}"));
        assert!(tikz.contains("-{Stealth[] Stealth[] Stealth[]}"));
    }

    #[test]
    fn self_adjacency_becomes_a_loop() {
        let m = Monograph::build(&[("x", &["x"])]).unwrap();
        let tikz = export_tikz(&m, None).unwrap();
        assert!(tikz.contains("to[loop above]"));
    }

    #[test]
    fn overlong_edges_are_rejected() {
        let long: Vec<&str> = vec!["n"; 10];
        let m = Monograph::build(&[("n", &[]), ("e", &long)]).unwrap();
        assert_eq!(
            export_tikz(&m, None).unwrap_err(),
            ExportError::TooManyTips {
                edge: EdgeId::from("e"),
                len: 10
            }
        );
    }

    #[test]
    fn output_is_deterministic() {
        let m = Monograph::build(&[("x", &["x", "y", "x"]), ("y", &["y", "x", "y"])]).unwrap();
        assert_eq!(export_dot(&m, None), export_dot(&m, None));
        assert_eq!(
            export_tikz(&m, None).unwrap(),
            export_tikz(&m, None).unwrap()
        );
    }
}
