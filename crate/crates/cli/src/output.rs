//! Output rendering helpers: number formatting, CSV quoting, simple text
//! tables, and the SVG bar chart.
//!
//! Table mode prints numbers with six fractional digits and a period decimal
//! separator regardless of locale; CSV and JSON carry full precision
//! (shortest round-trip form).

use std::fmt::Write as _;

/// Six fractional digits, for table mode.
pub fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

/// Shortest round-trip form, for CSV.
pub fn full(x: f64) -> String {
    format!("{x}")
}

/// Minimal RFC-4180 quoting: only when the field needs it.
pub fn csv_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// Left-align every column to its widest cell, two spaces between columns.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<width$}  ", width = widths[i]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Proportional text bar for table-mode histograms.
pub fn text_bar(count: usize, max: usize, width: usize) -> String {
    if max == 0 || count == 0 {
        return String::new();
    }
    let len = ((count * width).div_ceil(max)).min(width);
    "#".repeat(len)
}

/// Deterministic standalone SVG bar chart.
pub fn svg_bar_chart(title: &str, labels: &[String], values: &[f64]) -> String {
    const BAR_WIDTH: usize = 28;
    const GAP: usize = 8;
    const CHART_HEIGHT: usize = 220;
    const MARGIN: usize = 40;
    let width = MARGIN * 2 + labels.len().max(1) * (BAR_WIDTH + GAP);
    let height = CHART_HEIGHT + MARGIN * 2;
    let peak = values.iter().cloned().fold(0.0f64, f64::max);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "  <text x=\"{MARGIN}\" y=\"24\" font-family=\"monospace\" font-size=\"14\">{}</text>",
        xml_escape(title)
    );
    for (i, (label, &value)) in labels.iter().zip(values).enumerate() {
        let bar_height = if peak > 0.0 {
            ((value / peak) * CHART_HEIGHT as f64).round() as usize
        } else {
            0
        };
        let x = MARGIN + i * (BAR_WIDTH + GAP);
        let y = MARGIN + CHART_HEIGHT - bar_height;
        let _ = writeln!(
            svg,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{BAR_WIDTH}\" height=\"{bar_height}\" fill=\"#4878a8\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{x}\" y=\"{label_y}\" font-family=\"monospace\" font-size=\"9\" transform=\"rotate(45 {x} {label_y})\">{}</text>",
            xml_escape(label),
            label_y = MARGIN + CHART_HEIGHT + 12,
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
