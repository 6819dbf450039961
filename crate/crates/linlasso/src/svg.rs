//! Minimal SVG bar chart of subset content, written as plain XML.
//!
//! One group of two bars per subset — σ and σ² — on a fixed 800×400 canvas
//! with a [0, 1] vertical axis. No external assets, no scripting; the output
//! is a self-contained file a browser or image viewer can open directly.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Render grouped bars of σ and σ² for labelled subsets. `labels` and
/// `sigmas` must have equal length; σ values are clamped into [0, 1].
pub fn content_bars(title: &str, labels: &[String], sigmas: &[f64]) -> String {
    assert_eq!(labels.len(), sigmas.len(), "one label per value");
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let baseline = MARGIN_TOP + plot_h;
    let y_of = |v: f64| baseline - v.clamp(0.0, 1.0) * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));

    // horizontal grid with axis labels
    for tick in 0..=4 {
        let v = tick as f64 * 0.25;
        let y = y_of(v);
        out.push_str(&format!(
            "<line x1=\"{MARGIN_LEFT}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
             stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            WIDTH - MARGIN_RIGHT
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{v:.2}</text>\n",
            MARGIN_LEFT - 8.0,
            y + 4.0
        ));
    }

    let groups = labels.len().max(1) as f64;
    let group_w = plot_w / groups;
    let bar_w = (group_w * 0.3).min(60.0);
    for (i, (label, &sig)) in labels.iter().zip(sigmas).enumerate() {
        let center = MARGIN_LEFT + (i as f64 + 0.5) * group_w;
        let sig_sq = sig * sig;
        let (y1, y2) = (y_of(sig), y_of(sig_sq));
        out.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{y1:.1}\" width=\"{bar_w:.1}\" height=\"{:.1}\" fill=\"#4878a8\"/>\n",
            center - bar_w,
            baseline - y1
        ));
        out.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{y2:.1}\" width=\"{bar_w:.1}\" height=\"{:.1}\" fill=\"#e0883a\"/>\n",
            center,
            baseline - y2
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{:.3}</text>\n",
            center - bar_w / 2.0,
            y1 - 5.0,
            sig
        ));
        out.push_str(&format!(
            "<text x=\"{center:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            baseline + 18.0,
            escape(label)
        ));
    }

    // legend
    let lx = WIDTH - MARGIN_RIGHT - 150.0;
    out.push_str(&format!(
        "<rect x=\"{lx:.1}\" y=\"{MARGIN_TOP:.1}\" width=\"12\" height=\"12\" fill=\"#4878a8\"/>\n\
         <text x=\"{:.1}\" y=\"{:.1}\">sigma</text>\n",
        lx + 18.0,
        MARGIN_TOP + 11.0
    ));
    out.push_str(&format!(
        "<rect x=\"{lx:.1}\" y=\"{:.1}\" width=\"12\" height=\"12\" fill=\"#e0883a\"/>\n\
         <text x=\"{:.1}\" y=\"{:.1}\">sigma_sq</text>\n",
        MARGIN_TOP + 18.0,
        lx + 18.0,
        MARGIN_TOP + 29.0
    ));

    out.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" transform=\"rotate(-90 16 {:.1})\" text-anchor=\"middle\">content</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    ));
    out.push_str("</svg>\n");
    out
}
