//! Deterministic vector (SVG 1.1) and raster (binary PPM P6) rendering of
//! limit-set samples. Identical input produces byte-identical output.

use thiserror::Error;

use crate::explorer::LimitSetSample;
use crate::moebius::SpherePoint;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum RenderError {
    #[error("viewport has zero area")]
    EmptyViewport,
}

/// A planar window plus pixel dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: u32,
    pub height: u32,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport {
            x_min: -2.0,
            x_max: 2.0,
            y_min: -2.0,
            y_max: 2.0,
            width: 900,
            height: 900,
        }
    }
}

impl Viewport {
    fn validate(&self) -> Result<(), RenderError> {
        if !(self.x_max > self.x_min) || !(self.y_max > self.y_min) {
            return Err(RenderError::EmptyViewport);
        }
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::EmptyViewport);
        }
        Ok(())
    }

    fn pixel_of(&self, x: f64, y: f64) -> Option<(u32, u32)> {
        let fx = (x - self.x_min) / (self.x_max - self.x_min);
        let fy = (self.y_max - y) / (self.y_max - self.y_min);
        if !(0.0..1.0).contains(&fx) || !(0.0..1.0).contains(&fy) {
            return None;
        }
        Some((
            ((fx * self.width as f64) as u32).min(self.width - 1),
            ((fy * self.height as f64) as u32).min(self.height - 1),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    Ppm,
}

impl std::str::FromStr for ImageFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(ImageFormat::Svg),
            "ppm" => Ok(ImageFormat::Ppm),
            other => Err(format!("unknown format {other:?}, expected svg or ppm")),
        }
    }
}

/// Rendered bytes plus plot accounting; infinity cannot appear in a planar
/// view and is counted in `dropped_infinite`.
#[derive(Clone, Debug)]
pub struct RenderOutput {
    pub bytes: Vec<u8>,
    pub plotted: usize,
    pub clipped: usize,
    pub dropped_infinite: usize,
}

pub fn render(
    sample: &LimitSetSample,
    viewport: &Viewport,
    format: ImageFormat,
) -> Result<RenderOutput, RenderError> {
    viewport.validate()?;
    match format {
        ImageFormat::Ppm => render_ppm(sample, viewport),
        ImageFormat::Svg => render_svg(sample, viewport),
    }
}

fn render_ppm(sample: &LimitSetSample, vp: &Viewport) -> Result<RenderOutput, RenderError> {
    let (w, h) = (vp.width as usize, vp.height as usize);
    let mut raster = vec![0u8; w * h];
    let mut plotted = 0;
    let mut clipped = 0;
    let mut dropped_infinite = 0;
    for lp in &sample.points {
        match lp.point {
            SpherePoint::Infinity => dropped_infinite += 1,
            SpherePoint::Finite(z) => match vp.pixel_of(z.re, z.im) {
                Some((px, py)) => {
                    raster[py as usize * w + px as usize] = 1;
                    plotted += 1;
                }
                None => clipped += 1,
            },
        }
    }
    let mut bytes = format!("P6\n{} {}\n255\n", vp.width, vp.height).into_bytes();
    bytes.reserve(w * h * 3);
    for &v in &raster {
        // white points on black
        let c = if v == 1 { 255 } else { 0 };
        bytes.extend_from_slice(&[c, c, c]);
    }
    Ok(RenderOutput {
        bytes,
        plotted,
        clipped,
        dropped_infinite,
    })
}

fn render_svg(sample: &LimitSetSample, vp: &Viewport) -> Result<RenderOutput, RenderError> {
    let mut plotted = 0;
    let mut clipped = 0;
    let mut dropped_infinite = 0;
    let mut body = String::new();
    let sx = vp.width as f64 / (vp.x_max - vp.x_min);
    let sy = vp.height as f64 / (vp.y_max - vp.y_min);
    for lp in &sample.points {
        match lp.point {
            SpherePoint::Infinity => dropped_infinite += 1,
            SpherePoint::Finite(z) => {
                if z.re < vp.x_min || z.re >= vp.x_max || z.im <= vp.y_min || z.im > vp.y_max {
                    clipped += 1;
                    continue;
                }
                let px = (z.re - vp.x_min) * sx;
                let py = (vp.y_max - z.im) * sy;
                body.push_str(&format!(
                    "<circle cx=\"{px:.4}\" cy=\"{py:.4}\" r=\"0.8\"/>\n"
                ));
                plotted += 1;
            }
        }
    }
    let header = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <!-- depth {depth} seed {seed} points {n} dropped_infinite {inf} -->\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"black\"/>\n\
         <g fill=\"white\">\n",
        w = vp.width,
        h = vp.height,
        depth = sample.depth,
        seed = sample.seed,
        n = sample.points.len(),
        inf = dropped_infinite,
    );
    let mut bytes = header.into_bytes();
    bytes.extend_from_slice(body.as_bytes());
    bytes.extend_from_slice(b"</g>\n</svg>\n");
    Ok(RenderOutput {
        bytes,
        plotted,
        clipped,
        dropped_infinite,
    })
}
