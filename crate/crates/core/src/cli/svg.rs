//! Static SVG line charts for sweep and welfare CSV files.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLOURS: [&str; 2] = ["#1f77b4", "#d62728"];

#[derive(Debug, Clone, PartialEq)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

struct Table {
    columns: Vec<String>,
    x: Vec<f64>,
    series: Vec<Vec<f64>>,
    regimes: Vec<String>,
}

fn parse_csv(text: &str) -> Result<Table, SchemaError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| SchemaError("missing CSV header".into()))?;
    let (columns, has_regime): (Vec<String>, bool) = match header.trim() {
        "x,price,regime" => (vec!["price".into()], true),
        "x,phi_d,phi_c" => (vec!["phi_d".into(), "phi_c".into()], false),
        other => {
            return Err(SchemaError(format!(
                "unknown CSV header '{other}', expected 'x,price,regime' or 'x,phi_d,phi_c'"
            )))
        }
    };
    let mut t = Table { series: vec![Vec::new(); columns.len()], columns, x: Vec::new(), regimes: Vec::new() };
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(SchemaError(format!("row {}: expected 3 fields, got {}", i + 1, fields.len())));
        }
        let num = |s: &str| {
            s.parse::<f64>().map_err(|_| SchemaError(format!("row {}: '{s}' is not a number", i + 1)))
        };
        t.x.push(num(fields[0])?);
        t.series[0].push(num(fields[1])?);
        if has_regime {
            t.regimes.push(fields[2].to_string());
        } else {
            t.series[1].push(num(fields[2])?);
        }
    }
    Ok(t)
}

/// Renders a sweep (`x,price,regime`) or welfare (`x,phi_d,phi_c`) CSV.
pub fn render_svg(csv: &str) -> Result<String, SchemaError> {
    let t = parse_csv(csv)?;
    let (x_lo, x_hi) = if t.x.is_empty() {
        (0.0, 1.0)
    } else {
        let lo = t.x.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = t.x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) }
    };
    let mut y_lo = 0.0f64.min(0.5 * x_lo);
    let mut y_hi = 0.5 * x_hi;
    for s in &t.series {
        for &v in s {
            y_lo = y_lo.min(v);
            y_hi = y_hi.max(v);
        }
    }
    if !(y_hi > y_lo) {
        y_hi = y_lo + 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    // axes
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#,
        y0 = TOP + plot_h,
        x1 = LEFT + plot_w
    );
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{y0:.2}" stroke="black"/>"#,
        y0 = TOP + plot_h
    );
    for i in 0..=5 {
        let fx = x_lo + (x_hi - x_lo) * i as f64 / 5.0;
        let fy = y_lo + (y_hi - y_lo) * i as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{:.3}</text>"#,
            sx(fx),
            TOP + plot_h + 20.0,
            fx
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{:.3}</text>"#,
            LEFT - 8.0,
            sy(fy) + 4.0,
            fy
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">x</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    // x/2 reference
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888888" stroke-dasharray="6,4"/>"##,
        sx(x_lo),
        sy(0.5 * x_lo),
        sx(x_hi),
        sy(0.5 * x_hi)
    );
    for (k, s) in t.series.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        let pts: Vec<String> = t.x.iter().zip(s).map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            COLOURS[k % COLOURS.len()],
            pts.join(" ")
        );
    }
    for (k, name) in t.columns.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" fill="{}">{}</text>"#,
            LEFT + 10.0,
            TOP + 16.0 + 16.0 * k as f64,
            COLOURS[k % COLOURS.len()],
            name
        );
    }
    for i in 1..t.regimes.len() {
        if t.regimes[i] != t.regimes[i - 1] {
            let x = sx(t.x[i]);
            let _ = writeln!(
                out,
                r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#aaaaaa" stroke-dasharray="2,3"/>"##,
                TOP + plot_h
            );
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.2}" cy="{:.2}" r="4" fill="none" stroke="black"><title>{}</title></circle>"#,
                sy(t.series[0][i]),
                t.regimes[i]
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_body_draws_axes_only() {
        let svg = render_svg("x,price,regime\n").unwrap();
        assert!(svg.contains("<line"));
        assert!(!svg.contains("<polyline"));
        assert!(svg.contains(r#"width="800" height="600""#));
    }

    #[test]
    fn markers_at_regime_changes() {
        let csv = "x,price,regime\n0,0.075,bayes-low\n0.5,0.25,hedge\n1,0.425,bayes-high\n";
        let svg = render_svg(csv).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn welfare_has_two_curves_and_skips_footer() {
        let csv = "x,phi_d,phi_c\n0,0.06,0.24\n1,0.56,0.75\n# equality_band=none\n";
        let svg = render_svg(csv).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn unknown_header_is_a_schema_error() {
        assert!(render_svg("x_d,bad_lo,bad_hi\n").is_err());
        assert!(render_svg("").is_err());
    }
}
