//! Text and SVG pictures of diagrams.
//!
//! Both renderers are deterministic: the same diagram always produces the
//! same bytes, so outputs can be frozen in tests and diffed in scripts.

use crate::diagrams::{vertex_name, Diagram};

/// Plain-text summary: the two vertex rows followed by the edges grouped
/// by kind, each group in canonical order.
pub fn ascii(d: &Diagram) -> String {
    let k = d.k();
    let label_width = vertex_name(k, 0).len().max(if k > 0 {
        vertex_name(k, k - 1).len()
    } else {
        2
    });
    let row = |prefix: char| -> String {
        (1..=k)
            .map(|i| format!("{:>label_width$}", format!("{prefix}{i}")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut through = Vec::new();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (a, b) in d.edges() {
        let text = format!("{}-{}", vertex_name(k, a), vertex_name(k, b));
        if b < k {
            top.push(text);
        } else if a >= k {
            bottom.push(text);
        } else {
            through.push(text);
        }
    }
    let isolated: Vec<String> = d
        .isolated_vertices()
        .into_iter()
        .map(|v| vertex_name(k, v))
        .collect();
    let group = |items: &[String]| -> String {
        if items.is_empty() {
            "(none)".into()
        } else {
            items.join(", ")
        }
    };
    let mut out = String::new();
    out.push_str(&format!("width {k}\n"));
    if k > 0 {
        out.push_str(&row('t'));
        out.push('\n');
        out.push_str(&row('b'));
        out.push('\n');
    }
    out.push_str(&format!("through:  {}\n", group(&through)));
    out.push_str(&format!("top:      {}\n", group(&top)));
    out.push_str(&format!("bottom:   {}\n", group(&bottom)));
    out.push_str(&format!("isolated: {}\n", group(&isolated)));
    out
}

const MARGIN: i64 = 40;
const GAP: i64 = 60;
const TOP_Y: i64 = 50;
const BOTTOM_Y: i64 = 150;
const HEIGHT: i64 = 200;

fn x_of(column: usize) -> i64 {
    MARGIN + GAP * column as i64
}

/// Standalone SVG picture: vertices as dots (hollow when isolated),
/// through-strands as straight lines, same-row arcs as curves bowing into
/// the middle band.
pub fn svg(d: &Diagram) -> String {
    let k = d.k();
    let width = 2 * MARGIN + GAP * k.saturating_sub(1) as i64;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {width} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{width}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    for (a, b) in d.edges() {
        let (col_a, col_b) = (a.min(b) % k.max(1), a.max(b) % k.max(1));
        let (xa, xb) = (x_of(col_a), x_of(col_b));
        if b < k {
            // both endpoints on the top row: bow downward
            let dy = TOP_Y + (GAP * 7 * (col_b - col_a) as i64) / 20;
            out.push_str(&format!(
                "  <path d=\"M {xa} {TOP_Y} C {xa} {dy}, {xb} {dy}, {xb} {TOP_Y}\" \
                 fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n"
            ));
        } else if a >= k {
            // both endpoints on the bottom row: bow upward
            let dy = BOTTOM_Y - (GAP * 7 * (col_b - col_a) as i64) / 20;
            out.push_str(&format!(
                "  <path d=\"M {xa} {BOTTOM_Y} C {xa} {dy}, {xb} {dy}, {xb} {BOTTOM_Y}\" \
                 fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n"
            ));
        } else {
            let (xt, xb2) = (x_of(a), x_of(b - k));
            out.push_str(&format!(
                "  <line x1=\"{xt}\" y1=\"{TOP_Y}\" x2=\"{xb2}\" y2=\"{BOTTOM_Y}\" \
                 stroke=\"#333333\" stroke-width=\"2\"/>\n"
            ));
        }
    }
    for v in 0..2 * k {
        let (x, y) = if v < k {
            (x_of(v), TOP_Y)
        } else {
            (x_of(v - k), BOTTOM_Y)
        };
        let fill = if d.partner(v).is_none() {
            "#ffffff"
        } else {
            "#333333"
        };
        out.push_str(&format!(
            "  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"{fill}\" \
             stroke=\"#333333\" stroke-width=\"1.5\"/>\n"
        ));
        let label_y = if v < k { TOP_Y - 16 } else { BOTTOM_Y + 24 };
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"{label_y}\" font-family=\"monospace\" font-size=\"12\" \
             text-anchor=\"middle\" fill=\"#333333\">{}</text>\n",
            vertex_name(k, v)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_of_cup_cap_generator() {
        let d = Diagram::t(3, 1);
        let want = "width 3\n\
                    t1 t2 t3\n\
                    b1 b2 b3\n\
                    through:  t3-b3\n\
                    top:      t1-t2\n\
                    bottom:   b1-b2\n\
                    isolated: (none)\n";
        assert_eq!(ascii(&d), want);
    }

    #[test]
    fn ascii_of_deletion_generator() {
        let d = Diagram::p(2, 2);
        let want = "width 2\n\
                    t1 t2\n\
                    b1 b2\n\
                    through:  t1-b1\n\
                    top:      (none)\n\
                    bottom:   (none)\n\
                    isolated: t2, b2\n";
        assert_eq!(ascii(&d), want);
    }

    #[test]
    fn ascii_of_width_zero() {
        assert_eq!(
            ascii(&Diagram::empty(0)),
            "width 0\nthrough:  (none)\ntop:      (none)\nbottom:   (none)\nisolated: (none)\n"
        );
    }

    #[test]
    fn svg_is_deterministic_and_well_formed() {
        let d = Diagram::t(2, 1);
        let a = svg(&d);
        let b = svg(&d);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg xmlns="));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 4);
        assert_eq!(a.matches("<path").count(), 2);
        assert_eq!(a.matches("<line").count(), 0);
        assert_eq!(a.matches("<text").count(), 4);
    }

    #[test]
    fn svg_of_identity_has_straight_strands() {
        let s = svg(&Diagram::identity(3));
        assert_eq!(s.matches("<line").count(), 3);
        assert_eq!(s.matches("<path").count(), 0);
        // hollow dots only appear for isolated vertices
        assert_eq!(s.matches("fill=\"#ffffff\"").count(), 1); // background rect
    }

    #[test]
    fn svg_marks_isolated_vertices_hollow() {
        let s = svg(&Diagram::p(2, 1));
        // background rect plus two hollow circles
        assert_eq!(s.matches("fill=\"#ffffff\"").count(), 3);
    }
}
