//! Rank-2 pictures of the `l`-dilated hyperplane arrangement.
//!
//! Points are drawn in `rho`-shifted coordinates `x = lambda + rho`, so the
//! walls are the lines `<x, alpha> = k l`. The Euclidean picture comes from
//! the invariant form `(x, y) = sum_{alpha > 0} <x, alpha><y, alpha>`.

use std::fmt::Write;

use num_rational::Rational64;

use crate::affine_weyl::{AffineWeyl, QPoint};
use crate::error::{Error, Result};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;
const CHAIN_FILL: &str = "#b0b0b0";
const FACET: &str = "#d62728";
const WALL: &str = "#000000";
const GRID: &str = "#9a9a9a";

#[derive(Clone, Debug, Default)]
pub struct PlotOptions {
    pub ell: i64,
    /// Window `[-l, extent * l]` in each coordinate.
    pub extent: i64,
    /// Dominant weights whose facets and alcoves are highlighted.
    pub chain: Vec<Vec<i64>>,
    /// `v ∈ X^vee`; the walls through the special point `l v` are drawn thick.
    pub special: Option<Vec<i64>>,
}

struct Frame {
    l: [f64; 3],
    scale: f64,
    origin: (f64, f64),
}

impl Frame {
    fn new(aw: &AffineWeyl, lo: f64, hi: f64) -> Self {
        let mut g = [[0i64; 2]; 2];
        for c in &aw.rs.positive_roots {
            for i in 0..2 {
                for j in 0..2 {
                    g[i][j] += c[i] * c[j];
                }
            }
        }
        let a = (g[0][0] as f64).sqrt();
        let b = g[1][0] as f64 / a;
        let d = (g[1][1] as f64 - b * b).sqrt();
        let mut f = Frame { l: [a, b, d], scale: 1.0, origin: (0.0, 0.0) };
        let corners = [(lo, lo), (lo, hi), (hi, lo), (hi, hi)].map(|(x, y)| f.raw(x, y));
        let (minx, maxx) = minmax(corners.iter().map(|p| p.0));
        let (miny, maxy) = minmax(corners.iter().map(|p| p.1));
        f.scale = (SIZE - 2.0 * MARGIN) / (maxx - minx).max(maxy - miny);
        f.origin = (minx, maxy);
        f
    }

    fn raw(&self, x0: f64, x1: f64) -> (f64, f64) {
        (self.l[0] * x0 + self.l[1] * x1, self.l[2] * x1)
    }

    fn map(&self, x0: f64, x1: f64) -> (f64, f64) {
        let (x, y) = self.raw(x0, x1);
        (
            MARGIN + (x - self.origin.0) * self.scale,
            MARGIN + (self.origin.1 - y) * self.scale,
        )
    }
}

fn minmax(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)))
}

fn num(x: f64) -> String {
    let s = format!("{:.3}", x);
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Segment of `c0 x0 + c1 x1 = k` inside the square `[lo, hi]^2`.
fn clip(c: &[i64], k: i64, lo: i64, hi: i64) -> Option<[(Rational64, Rational64); 2]> {
    let r = Rational64::from_integer;
    let mut pts: Vec<(Rational64, Rational64)> = Vec::new();
    for edge in [lo, hi] {
        if c[1] != 0 {
            let y = (r(k) - r(c[0] * edge)) / r(c[1]);
            if y >= r(lo) && y <= r(hi) {
                pts.push((r(edge), y));
            }
        }
        if c[0] != 0 {
            let x = (r(k) - r(c[1] * edge)) / r(c[0]);
            if x >= r(lo) && x <= r(hi) {
                pts.push((x, r(edge)));
            }
        }
    }
    pts.sort();
    pts.dedup();
    (pts.len() >= 2).then(|| [pts[0], pts[pts.len() - 1]])
}

fn f(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn render(aw: &AffineWeyl, opts: &PlotOptions) -> Result<String> {
    if aw.rank() != 2 {
        return Err(Error::Usage("plots are available for rank 2 only".into()));
    }
    if opts.ell < 1 || opts.extent < 1 {
        return Err(Error::Usage("ell and extent must be positive".into()));
    }
    let ell = opts.ell;
    let (lo, hi) = (-ell, opts.extent * ell);
    let fr = Frame::new(aw, lo as f64, hi as f64);
    let mut s = String::new();
    writeln!(
        s,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        SIZE as i64
    )
    .unwrap();
    writeln!(s, "<title>{} arrangement, l = {ell}</title>", aw.rs.name()).unwrap();
    writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>").unwrap();

    // Chain alcoves, shaded.
    let verts = unit_vertices(aw);
    let mut facets: Vec<Vec<(f64, f64)>> = Vec::new();
    for lam in &opts.chain {
        if lam.len() != 2 || !aw.rs.is_dominant(lam) {
            return Err(Error::Usage(format!("{lam:?} is not a dominant weight")));
        }
        let x = QPoint::new(lam.iter().map(|v| v + 1).collect(), ell);
        let (rep, w) = aw.orbit_representative(&x);
        let g = aw.unit_facet_of(&rep)?;
        let a = aw.max_in_coset(&aw.alcove_of(&w), &g);
        let e = aw.element_of(&a);
        let image = |v: &QPoint| {
            let p = v.act(&e).scale(ell, 1);
            fr.map(p.num[0] as f64 / p.den as f64, p.num[1] as f64 / p.den as f64)
        };
        let poly: Vec<(f64, f64)> = verts.iter().map(|(_, v)| image(v)).collect();
        let pts: Vec<String> = poly.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        writeln!(s, "<polygon points=\"{}\" fill=\"{CHAIN_FILL}\" stroke=\"none\"/>", pts.join(" ")).unwrap();
        facets.push(
            verts
                .iter()
                .filter(|(t, _)| !g.gens.contains(t))
                .map(|(_, v)| image(v))
                .collect(),
        );
    }

    // Arrangement.
    for c in &aw.rs.positive_roots {
        let vals = [(lo, lo), (lo, hi), (hi, lo), (hi, hi)].map(|(a, b)| c[0] * a + c[1] * b);
        let kmin = vals.iter().min().unwrap().div_euclid(ell);
        let kmax = vals.iter().max().unwrap().div_euclid(ell) + 1;
        for k in kmin..=kmax {
            if let Some(seg) = clip(c, k * ell, lo, hi) {
                line(&mut s, &fr, seg, GRID, 0.6, false);
            }
        }
    }

    // Dominant cone and its shift by l rho: rays `x_i = k, x_j >= k`.
    let r = Rational64::from_integer;
    for i in 0..2 {
        for (k, dashed) in [(0, false), (ell, true)] {
            let mut b = [r(k), r(k)];
            b[1 - i] = r(hi);
            line(&mut s, &fr, [(r(k), r(k)), (b[0], b[1])], WALL, 2.5, dashed);
        }
    }

    if let Some(v) = &opts.special {
        if v.len() != 2 {
            return Err(Error::Usage("special point needs two coordinates".into()));
        }
        let x = [v[0] * ell, v[1] * ell];
        for c in &aw.rs.positive_roots {
            let k = c[0] * x[0] + c[1] * x[1];
            if let Some(seg) = clip(c, k, lo, hi) {
                line(&mut s, &fr, seg, WALL, 2.0, false);
            }
        }
    }

    for pts in &facets {
        match pts.len() {
            1 => {
                writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{FACET}\"/>", num(pts[0].0), num(pts[0].1)).unwrap();
            }
            2 => {
                writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{FACET}\" stroke-width=\"3\"/>",
                    num(pts[0].0),
                    num(pts[0].1),
                    num(pts[1].0),
                    num(pts[1].1)
                )
                .unwrap();
            }
            _ => {
                let p: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
                writeln!(s, "<polygon points=\"{}\" fill=\"none\" stroke=\"{FACET}\" stroke-width=\"2\"/>", p.join(" ")).unwrap();
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Vertices of the closed fundamental alcove, tagged by the opposite wall.
fn unit_vertices(aw: &AffineWeyl) -> Vec<(usize, QPoint)> {
    let affine = aw.rank();
    let mut out = vec![(affine, QPoint::integral(&[0, 0]))];
    for s in 0..2 {
        let c = aw.rs.positive_roots[aw.rs.highest[0]][s];
        let mut num = vec![0, 0];
        num[s] = 1;
        out.push((s, QPoint::new(num, c)));
    }
    out
}

fn line(s: &mut String, fr: &Frame, seg: [(Rational64, Rational64); 2], color: &str, width: f64, dashed: bool) {
    let (x1, y1) = fr.map(f(seg[0].0), f(seg[0].1));
    let (x2, y2) = fr.map(f(seg[1].0), f(seg[1].1));
    let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
    writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{width}\"{dash}/>",
        num(x1),
        num(y1),
        num(x2),
        num(y2)
    )
    .unwrap();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_rank_checked() {
        let aw = AffineWeyl::parse("C2").unwrap();
        let opts = PlotOptions {
            ell: 2,
            extent: 4,
            chain: vec![vec![0, 0], vec![1, 2]],
            special: Some(vec![1, 1]),
        };
        let a = render(&aw, &opts).unwrap();
        assert_eq!(a, render(&aw, &opts).unwrap());
        assert!(a.starts_with("<?xml") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches(CHAIN_FILL).count(), 2);
        assert!(render(&AffineWeyl::parse("A1").unwrap(), &opts).is_err());
    }
}
