use std::fmt::Write;

use super::series::SeriesReport;

/// CSV with columns `k,count,shell_sum,ratio,partial_re,partial_im`; `ratio` is
/// empty on the first row.
pub fn series_csv(report: &SeriesReport) -> String {
    let mut out = String::from("k,count,shell_sum,ratio,partial_re,partial_im\n");
    for (i, s) in report.shells.iter().enumerate() {
        let ratio = if i == 0 { String::new() } else { format!("{:e}", report.decay_ratios[i - 1]) };
        let p = report.partial_sums[i];
        writeln!(out, "{},{},{:e},{},{:e},{:e}", s.k, s.count, s.magnitude, ratio, p[0], p[1])
            .expect("writing to a String");
    }
    out
}

/// Line plot of `log10(shell magnitude)` against `k`.
pub fn series_svg(report: &SeriesReport) -> String {
    let (w, h, pad) = (480.0, 320.0, 40.0);
    let pts: Vec<(f64, f64)> = report
        .shells
        .iter()
        .filter(|s| s.magnitude > 0.0)
        .map(|s| (s.k as f64, s.magnitude.log10()))
        .collect();
    let kmax = pts.iter().map(|p| p.0).fold(1.0, f64::max);
    let ymin = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ymax = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let span = if ymax > ymin { ymax - ymin } else { 1.0 };
    let sx = |k: f64| pad + k / kmax * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - ymin) / span * (h - 2.0 * pad);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<line x1="{pad}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        h - pad,
        w - pad
    )
    .unwrap();
    writeln!(out, r#"<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{}" stroke="black"/>"#, h - pad).unwrap();
    let coords: Vec<String> = pts.iter().map(|&(k, y)| format!("{:.3},{:.3}", sx(k), sy(y))).collect();
    writeln!(out, r#"<polyline fill="none" stroke="blue" points="{}"/>"#, coords.join(" ")).unwrap();
    writeln!(
        out,
        r#"<text x="{pad}" y="20" font-size="12">log10 shell sum, d = {} (max {:.2}, min {:.2})</text>"#,
        report.d, ymax, ymin
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
