//! Browser bindings: analyze a term, draw a sampled restriction as a Hasse
//! diagram, and draw a saturated dense stage.

use std::fmt::Write;

use serde_json::json;
use wasm_bindgen::prelude::*;

use ordcalc::densegen::{check_star, saturate, StageOrder};
use ordcalc::report::{envelope, to_text};
use ordcalc::sampler::sample_restriction;
use ordcalc::{attrs, parse, FinPoset};

const MAX_SAMPLE: usize = 40;
const MAX_ROUNDS: u32 = 5;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Attribute report of `src` as pretty JSON.
pub fn analyze_json(src: &str) -> Result<String, String> {
    let t = parse(src).map_err(|e| e.to_string())?;
    let r = attrs(&t).map_err(|e| e.to_string())?;
    Ok(to_text(&envelope(
        "analyze",
        &json!({"term": t, "attrs": r}),
    )))
}

/// Layered Hasse diagram: level of a point is the length of the longest
/// chain below it.
pub fn hasse_svg(p: &FinPoset, labels: &[String]) -> String {
    let n = p.len();
    let mut level = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.downset(i).count_ones());
    for &i in &order {
        level[i] = (0..n)
            .filter(|&j| p.lt(j, i))
            .map(|j| level[j] + 1)
            .max()
            .unwrap_or(0);
    }
    let depth = level.iter().copied().max().map_or(0, |m| m + 1);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); depth];
    for &i in &order {
        rows[level[i]].push(i);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let (dx, dy, pad) = (110.0, 70.0, 40.0);
    let width = widest as f64 * dx + 2.0 * pad;
    let height = depth.max(1) as f64 * dy + 2.0 * pad;
    let mut pos = vec![(0.0, 0.0); n];
    for (l, row) in rows.iter().enumerate() {
        let offset = (width - row.len() as f64 * dx) / 2.0 + dx / 2.0;
        for (k, &i) in row.iter().enumerate() {
            pos[i] = (
                offset + k as f64 * dx,
                height - pad - l as f64 * dy - dy / 2.0,
            );
        }
    }
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {height:.0}" width="{width:.0}" height="{height:.0}" font-family="monospace" font-size="11">"#
    );
    for (a, b) in p.covers() {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        let _ = write!(
            svg,
            r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="#777"/>"##
        );
    }
    for (i, &(x, y)) in pos.iter().enumerate() {
        let label = labels.get(i).map_or_else(|| i.to_string(), |s| escape(s));
        let _ = write!(
            svg,
            r##"<circle cx="{x:.1}" cy="{y:.1}" r="5" fill="#2b6cb0"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{label}</text>"##,
            y - 9.0
        );
    }
    svg.push_str("</svg>");
    svg
}

/// Seeded restriction of `src` to `n` points, drawn as a Hasse diagram.
pub fn sample_to_svg(src: &str, n: usize, seed: u64) -> Result<String, String> {
    if n > MAX_SAMPLE {
        return Err(format!("at most {MAX_SAMPLE} points"));
    }
    let t = parse(src).map_err(|e| e.to_string())?;
    let s = sample_restriction(&t, n, seed).map_err(|e| e.to_string())?;
    let labels: Vec<String> = s.addresses.iter().map(|a| a.to_string()).collect();
    Ok(hasse_svg(&s.poset, &labels))
}

/// Saturation of a two-element chain drawn on a line, one colour per round.
pub fn dense_to_svg(rounds: u32, bound: usize, seed: u64) -> Result<String, String> {
    if rounds > MAX_ROUNDS {
        return Err(format!("at most {MAX_ROUNDS} rounds"));
    }
    let p = saturate(&StageOrder::chain(2), rounds, bound, seed).map_err(|e| e.to_string())?;
    let colours = [
        "#1a202c", "#2b6cb0", "#2f855a", "#c05621", "#9b2c2c", "#6b46c1",
    ];
    let n = p.len();
    let width = 60.0 + 14.0 * n as f64;
    let unmet = check_star(&p, bound, None).len();
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} 120" width="{width:.0}" height="120" font-family="monospace" font-size="11">"#
    );
    let _ = write!(
        svg,
        r##"<line x1="20" y1="60" x2="{:.0}" y2="60" stroke="#aaa"/>"##,
        width - 20.0
    );
    for (k, e) in p.elements().iter().enumerate() {
        let x = 30.0 + 14.0 * k as f64;
        let colour = colours[(e.birth as usize).min(colours.len() - 1)];
        let _ = write!(
            svg,
            r#"<circle cx="{x:.1}" cy="60" r="5" fill="{colour}"><title>id {} label {} round {}</title></circle>"#,
            e.id, e.label, e.birth
        );
    }
    let _ = write!(
        svg,
        r#"<text x="20" y="100">{n} elements, {unmet} requests of side at most {bound} still open</text></svg>"#
    );
    Ok(svg)
}

#[wasm_bindgen]
pub fn analyze(src: &str) -> Result<String, JsError> {
    analyze_json(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sample_svg(src: &str, n: usize, seed: u32) -> Result<String, JsError> {
    sample_to_svg(src, n, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn dense_svg(rounds: u32, bound: usize, seed: u32) -> Result<String, JsError> {
    dense_to_svg(rounds, bound, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_json() {
        let text = analyze_json("L").unwrap();
        assert!(text.contains("\"weakly_kappa_dense\": true"));
        assert!(analyze_json("sum(").is_err());
    }

    #[test]
    fn hasse_has_one_line_per_cover() {
        let svg = sample_to_svg("lsum(fin(3; 0<1, 0<2); w, k*, Q)", 10, 3).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
        let diamond = FinPoset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let svg = hasse_svg(&diamond, &[]);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn dense_drawing() {
        let svg = dense_to_svg(1, 1, 0).unwrap();
        assert_eq!(svg.matches("<circle").count(), 5);
        assert!(dense_to_svg(9, 1, 0).is_err());
    }
}
