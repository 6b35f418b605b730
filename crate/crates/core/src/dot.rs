//! Hasse-diagram export in DOT syntax: covers as edges, ranked bottom to
//! top. Dual-pair mode draws an algebra next to its spectrum with the
//! points labeled by the filters they carry.

use crate::error::Result;
use crate::filters::set_label;
use crate::functors::{functor_x_obj, x_space_point_filters, DualObject, Variant};
use crate::poset::{BoundKind, FinitePoset};
use crate::space::Space;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

fn emit_poset(out: &mut String, p: &FinitePoset, indent: &str, prefix: &str) {
    for (i, name) in p.elements().iter().enumerate() {
        out.push_str(&format!("{indent}{} [label={}];\n", quote(&format!("{prefix}{i}")), quote(name)));
    }
    for (a, b) in p.hasse_covers() {
        out.push_str(&format!(
            "{indent}{} -> {};\n",
            quote(&format!("{prefix}{a}")),
            quote(&format!("{prefix}{b}"))
        ));
    }
}

fn emit_space(out: &mut String, x: &Space, indent: &str, prefix: &str) {
    for (i, name) in x.carrier.elements().iter().enumerate() {
        let mut attrs = vec![format!("label={}", quote(name))];
        if x.x0 >> i & 1 == 1 {
            attrs.push("shape=doublecircle".to_string());
        }
        if x.point == Some(i) {
            attrs.push("penwidth=2".to_string());
        }
        out.push_str(&format!(
            "{indent}{} [{}];\n",
            quote(&format!("{prefix}{i}")),
            attrs.join(", ")
        ));
    }
    for (a, b) in x.carrier.hasse_covers() {
        out.push_str(&format!(
            "{indent}{} -> {};\n",
            quote(&format!("{prefix}{a}")),
            quote(&format!("{prefix}{b}"))
        ));
    }
}

/// Hasse diagram of one object.
pub fn export_dot(obj: &DualObject) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    match obj {
        DualObject::Poset(p) => emit_poset(&mut out, p, "  ", "n"),
        DualObject::Space(x) => emit_space(&mut out, x, "  ", "n"),
    }
    out.push_str("}\n");
    out
}

/// A semilattice and its spectrum side by side; spectrum points are labeled
/// by their filters (principal ones as up-arrows of their generator).
pub fn export_dot_pair(m: &FinitePoset) -> Result<String> {
    let space = functor_x_obj(m, Variant::Pointed)?;
    let point_filters = x_space_point_filters(m, Variant::Pointed)?;
    let mut out = String::from("digraph dual_pair {\n  rankdir=BT;\n  node [shape=circle];\n");
    out.push_str("  subgraph cluster_algebra {\n    label=\"M\";\n");
    emit_poset(&mut out, m, "    ", "a");
    out.push_str("  }\n");
    out.push_str("  subgraph cluster_spectrum {\n    label=\"X(M)\";\n");
    for (i, &filter) in point_filters.iter().enumerate() {
        let label = if filter == m.full_mask() {
            "M".to_string()
        } else {
            match m.bound(filter, BoundKind::Meet) {
                Some(g) if m.up_mask(g) == filter => format!("↑{}", m.name(g)),
                _ => set_label(m, filter),
            }
        };
        let mut attrs = vec![format!("label={}", quote(&label))];
        if space.x0 >> i & 1 == 1 {
            attrs.push("shape=doublecircle".to_string());
        }
        out.push_str(&format!("    {} [{}];\n", quote(&format!("x{i}")), attrs.join(", ")));
    }
    for (a, b) in space.carrier.hasse_covers() {
        out.push_str(&format!(
            "    {} -> {};\n",
            quote(&format!("x{a}")),
            quote(&format!("x{b}"))
        ));
    }
    out.push_str("  }\n}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn ch2_has_one_edge() {
        let text = export_dot(&DualObject::Poset(ch2()));
        assert_eq!(text.matches(" -> ").count(), 1);
    }

    #[test]
    fn b2_has_four_edges() {
        let text = export_dot(&DualObject::Poset(b2()));
        assert_eq!(text.matches(" -> ").count(), 4);
    }

    #[test]
    fn antichain_has_no_edges() {
        let text = export_dot(&DualObject::Poset(antichain(2)));
        assert_eq!(text.matches(" -> ").count(), 0);
    }

    #[test]
    fn pair_mode_emits_two_clusters_with_filter_labels() {
        let text = export_dot_pair(&b2()).unwrap();
        assert_eq!(text.matches("subgraph cluster_").count(), 2);
        assert!(text.contains("↑a") && text.contains("↑b") && text.contains("label=\"M\""));
    }

    #[test]
    fn export_is_deterministic() {
        assert_eq!(
            export_dot(&DualObject::Poset(n5())),
            export_dot(&DualObject::Poset(n5()))
        );
    }
}
