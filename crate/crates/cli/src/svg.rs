//! Just enough SVG 1.1 to draw curves and nets.

use std::fmt::Write;

use crate::fmt_num;

pub struct Svg {
    body: String,
    width: f64,
    height: f64,
    precision: usize,
}

impl Svg {
    pub fn new(width: f64, height: f64, precision: usize) -> Self {
        Self {
            body: String::new(),
            width,
            height,
            precision,
        }
    }

    fn n(&self, x: f64) -> String {
        fmt_num(x, self.precision)
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        let s = format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
            self.n(a.0),
            self.n(a.1),
            self.n(b.0),
            self.n(b.1)
        );
        self.body.push_str(&s);
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", self.n(x), self.n(y)))
            .collect();
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" {style}/>",
            coords.join(" ")
        );
    }

    pub fn polygon(&mut self, pts: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", self.n(x), self.n(y)))
            .collect();
        let _ = writeln!(
            self.body,
            "<polygon points=\"{}\" {style}/>",
            coords.join(" ")
        );
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        let s = format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>\n",
            self.n(x),
            self.n(y),
            self.n(w),
            self.n(h)
        );
        self.body.push_str(&s);
    }

    pub fn text(&mut self, at: (f64, f64), text: &str, style: &str) {
        let s = format!(
            "<text x=\"{}\" y=\"{}\" {style}>{}</text>\n",
            self.n(at.0),
            self.n(at.1),
            escape(text)
        );
        self.body.push_str(&s);
    }

    pub fn comment(&mut self, text: &str) {
        let _ = writeln!(self.body, "<!-- {} -->", text.replace("--", "- -"));
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Maps data coordinates onto a plot area with margins; y grows upward.
pub struct Frame {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub width: f64,
    pub height: f64,
    pub margin: f64,
}

impl Frame {
    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let pw = self.width - 2.0 * self.margin;
        let ph = self.height - 2.0 * self.margin;
        (
            self.margin + (x - x0) / (x1 - x0) * pw,
            self.height - self.margin - (y - y0) / (y1 - y0) * ph,
        )
    }

    /// Axes with labelled end ticks.
    pub fn axes(&self, svg: &mut Svg, x_label: &str, y_label: &str) {
        let style = "stroke=\"black\" stroke-width=\"1\"";
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        svg.line(self.map(x0, y0), self.map(x1, y0), style);
        svg.line(self.map(x0, y0), self.map(x0, y1), style);
        let small = "font-size=\"11\" font-family=\"sans-serif\"";
        for x in [x0, x1] {
            let (px, py) = self.map(x, y0);
            svg.text((px - 6.0, py + 16.0), &fmt_num(x, 3), small);
        }
        for y in [y0, y1] {
            let (px, py) = self.map(x0, y);
            svg.text((px - 36.0, py + 4.0), &fmt_num(y, 3), small);
        }
        let (px, py) = self.map(0.5 * (x0 + x1), y0);
        svg.text((px, py + 32.0), x_label, small);
        let (px, py) = self.map(x0, 0.5 * (y0 + y1));
        svg.text((px - 40.0, py - 12.0), y_label, small);
    }

    /// Dashed vertical marker with a label.
    pub fn marker(&self, svg: &mut Svg, x: f64, label: &str, colour: &str) {
        let (x0, x1) = self.x_range;
        if x < x0 || x > x1 {
            return;
        }
        let (y0, y1) = self.y_range;
        let style = format!("stroke=\"{colour}\" stroke-width=\"1\" stroke-dasharray=\"4,3\"");
        svg.line(self.map(x, y0), self.map(x, y1), &style);
        let (px, py) = self.map(x, y1);
        svg.text(
            (px + 3.0, py + 12.0),
            label,
            &format!("font-size=\"11\" font-family=\"sans-serif\" fill=\"{colour}\""),
        );
    }
}
