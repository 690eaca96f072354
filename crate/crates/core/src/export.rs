//! Point cloud and copy outline writers.
//!
//! CSV numbers use 17 significant digits in scientific notation so that
//! every `f64` round-trips exactly and output is byte-identical across
//! platforms. Vertex indices are written 1-based.

use std::io::{self, BufRead, Write};

use byteorder::{LittleEndian, WriteBytesExt};
use thiserror::Error;

use crate::chaos::PointCloud;
use crate::ifs::CopySet;
use crate::polytope::Polytope;

/// Twelve distinguishable colours, indexed by vertex modulo 12.
pub const PALETTE: [[u8; 3]; 12] = [
    [0xe6, 0x19, 0x4b],
    [0x3c, 0xb4, 0x4b],
    [0x43, 0x63, 0xd8],
    [0xf5, 0x82, 0x31],
    [0x91, 0x1e, 0xb4],
    [0x42, 0xd4, 0xf4],
    [0xf0, 0x32, 0xe6],
    [0xbf, 0xef, 0x45],
    [0x46, 0x99, 0x90],
    [0x9a, 0x63, 0x24],
    [0x80, 0x00, 0x00],
    [0x00, 0x00, 0x75],
];

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{format} output needs dimension {needed}, got {dimension}")]
    UnsupportedDimension {
        format: &'static str,
        needed: usize,
        dimension: usize,
    },
    #[error("malformed CSV at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub fn palette_color(vertex: usize) -> [u8; 3] {
    PALETTE[vertex % PALETTE.len()]
}

fn hex_color(vertex: usize) -> String {
    let [r, g, b] = palette_color(vertex);
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn format_coord(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x1,...,xn,vertex` header, then one row per retained point.
pub fn write_cloud_csv<W: Write>(cloud: &PointCloud, mut out: W) -> Result<(), ExportError> {
    let mut header: Vec<String> = (1..=cloud.dimension).map(|k| format!("x{k}")).collect();
    header.push("vertex".into());
    writeln!(out, "{}", header.join(","))?;
    let mut line = String::new();
    for (p, &c) in cloud.points.iter().zip(&cloud.colors) {
        line.clear();
        for x in p.iter() {
            line.push_str(&format_coord(*x));
            line.push(',');
        }
        line.push_str(&(c + 1).to_string());
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// Parse a cloud CSV back into coordinates and 0-based vertex indices.
pub fn read_cloud_csv<R: BufRead>(input: R) -> Result<(Vec<Vec<f64>>, Vec<usize>), ExportError> {
    let mut lines = input.lines();
    let header = lines.next().ok_or(ExportError::Parse {
        line: 1,
        reason: "missing header".into(),
    })??;
    let columns = header.split(',').count();
    if columns < 2 || !header.ends_with(",vertex") {
        return Err(ExportError::Parse {
            line: 1,
            reason: format!("unexpected header `{header}`"),
        });
    }
    let mut points = Vec::new();
    let mut colors = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split(',').collect();
        let bad = |reason: String| ExportError::Parse { line: n + 2, reason };
        if fields.len() != columns {
            return Err(bad(format!("expected {columns} fields, got {}", fields.len())));
        }
        let coords = fields[..columns - 1]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let vertex: usize = fields[columns - 1]
            .parse()
            .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        if vertex == 0 {
            return Err(bad("vertex indices are 1-based".into()));
        }
        points.push(coords);
        colors.push(vertex - 1);
    }
    Ok((points, colors))
}

/// Binary little-endian PLY with float xyz and uchar rgb per point.
pub fn write_cloud_ply<W: Write>(cloud: &PointCloud, mut out: W) -> Result<(), ExportError> {
    if cloud.dimension != 3 {
        return Err(ExportError::UnsupportedDimension {
            format: "PLY",
            needed: 3,
            dimension: cloud.dimension,
        });
    }
    write!(
        out,
        "ply\nformat binary_little_endian 1.0\ncomment generalized chaos game, {}, r = {}\n\
         element vertex {}\nproperty float x\nproperty float y\nproperty float z\n\
         property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n",
        cloud.polytope_name,
        cloud.config.ratio,
        cloud.len()
    )?;
    for (p, &c) in cloud.points.iter().zip(&cloud.colors) {
        for x in p.iter() {
            out.write_f32::<LittleEndian>(*x as f32)?;
        }
        out.write_all(&palette_color(c))?;
    }
    out.flush()?;
    Ok(())
}

/// ViewBox `(min_x, min_y, width, height)` in SVG coordinates (y flipped),
/// padded by 5% on every side.
fn view_box(p: &Polytope) -> (f64, f64, f64, f64) {
    let (lo, hi) = p.bounding_box();
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let (px, py) = (0.05 * w, 0.05 * h);
    (lo[0] - px, -hi[1] - py, w + 2.0 * px, h + 2.0 * py)
}

fn svg_open<W: Write>(out: &mut W, vb: (f64, f64, f64, f64)) -> io::Result<()> {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        vb.0, vb.1, vb.2, vb.3
    )?;
    writeln!(
        out,
        r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white"/>"#,
        vb.0, vb.1, vb.2, vb.3
    )
}

/// One filled circle per point, coloured by vertex.
pub fn write_cloud_svg<W: Write>(
    cloud: &PointCloud,
    polytope: &Polytope,
    mut out: W,
) -> Result<(), ExportError> {
    if cloud.dimension != 2 || polytope.dimension() != 2 {
        return Err(ExportError::UnsupportedDimension {
            format: "SVG",
            needed: 2,
            dimension: cloud.dimension,
        });
    }
    let vb = view_box(polytope);
    let radius = 0.003 * vb.2.max(vb.3);
    svg_open(&mut out, vb)?;
    for (p, &c) in cloud.points.iter().zip(&cloud.colors) {
        writeln!(
            out,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{}"/>"#,
            p[0],
            -p[1],
            radius,
            hex_color(c)
        )?;
    }
    writeln!(out, "</svg>")?;
    out.flush()?;
    Ok(())
}

/// Outline of every copy, stroked by the first map in its ancestry.
pub fn write_copies_svg<W: Write>(
    copies: &CopySet,
    polytope: &Polytope,
    mut out: W,
) -> Result<(), ExportError> {
    if polytope.dimension() != 2 {
        return Err(ExportError::UnsupportedDimension {
            format: "SVG",
            needed: 2,
            dimension: polytope.dimension(),
        });
    }
    let vb = view_box(polytope);
    let stroke = 0.002 * vb.2.max(vb.3);
    svg_open(&mut out, vb)?;
    for copy in &copies.copies {
        let points: Vec<String> = copy
            .vertices
            .iter()
            .map(|v| format!("{:.6},{:.6}", v[0], -v[1]))
            .collect();
        let color = copy.ancestry.first().map_or("#000000".to_string(), |&i| hex_color(i));
        writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="{:.6}"/>"#,
            points.join(" "),
            color,
            stroke
        )?;
    }
    writeln!(out, "</svg>")?;
    out.flush()?;
    Ok(())
}

/// `x1,...,xn,copy,ancestry`: one row per copy vertex. Ancestry is the
/// 1-based map sequence joined by `-` (empty at level 0).
pub fn write_copies_csv<W: Write>(copies: &CopySet, dimension: usize, mut out: W) -> Result<(), ExportError> {
    let mut header: Vec<String> = (1..=dimension).map(|k| format!("x{k}")).collect();
    header.push("copy".into());
    header.push("ancestry".into());
    writeln!(out, "{}", header.join(","))?;
    for (idx, copy) in copies.copies.iter().enumerate() {
        let ancestry: Vec<String> = copy.ancestry.iter().map(|i| (i + 1).to_string()).collect();
        let ancestry = ancestry.join("-");
        for v in &copy.vertices {
            let coords: Vec<String> = v.iter().map(|x| format_coord(*x)).collect();
            writeln!(out, "{},{},{}", coords.join(","), idx + 1, ancestry)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::{gcg_run, GcgConfig};
    use crate::ifs::hutchinson_iterate;
    use crate::polytope::{generate_polytope, Family};

    #[test]
    fn csv_round_trip_is_exact() {
        let tri = generate_polytope(Family::Polygon(3), 2, 1.0).unwrap();
        let cloud = gcg_run(&tri, &GcgConfig::new(0.5, 200, 3)).unwrap();
        let mut buf = Vec::new();
        write_cloud_csv(&cloud, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x1,x2,vertex\n"));
        let (points, colors) = read_cloud_csv(&buf[..]).unwrap();
        assert_eq!(colors, cloud.colors);
        for (p, q) in points.iter().zip(&cloud.points) {
            assert_eq!(p.as_slice(), q.as_slice());
        }
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(read_cloud_csv("x1,x2,vertex\n1,2\n".as_bytes()).is_err());
        assert!(read_cloud_csv("x1,x2,vertex\n1,2,0\n".as_bytes()).is_err());
        assert!(read_cloud_csv("a,b\n".as_bytes()).is_err());
    }

    #[test]
    fn ply_layout() {
        let ico = generate_polytope(Family::Icosahedron, 3, 2.0).unwrap();
        let cloud = gcg_run(&ico, &GcgConfig::new(0.618, 16, 1)).unwrap();
        let mut buf = Vec::new();
        write_cloud_ply(&cloud, &mut buf).unwrap();
        let end = b"end_header\n";
        let pos = buf.windows(end.len()).position(|w| w == end).unwrap() + end.len();
        let header = std::str::from_utf8(&buf[..pos]).unwrap();
        assert!(header.contains("format binary_little_endian 1.0"));
        assert!(header.contains("element vertex 10\n"));
        assert_eq!(buf.len() - pos, 10 * (3 * 4 + 3));
        let x = f32::from_le_bytes(buf[pos..pos + 4].try_into().unwrap());
        assert_eq!(x, cloud.points[0][0] as f32);
        assert_eq!(buf[pos + 12..pos + 15], palette_color(cloud.colors[0]));
    }

    #[test]
    fn dimension_checks() {
        let tri = generate_polytope(Family::Polygon(3), 2, 1.0).unwrap();
        let cloud = gcg_run(&tri, &GcgConfig::new(0.5, 16, 1)).unwrap();
        assert!(matches!(
            write_cloud_ply(&cloud, Vec::new()),
            Err(ExportError::UnsupportedDimension { .. })
        ));
        let cube = generate_polytope(Family::Cube, 3, 1.0).unwrap();
        let cloud3 = gcg_run(&cube, &GcgConfig::new(0.5, 16, 1)).unwrap();
        assert!(matches!(
            write_cloud_svg(&cloud3, &cube, Vec::new()),
            Err(ExportError::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn copies_svg_has_one_outline_per_copy() {
        let tri = generate_polytope(Family::Polygon(3), 2, 1.0).unwrap();
        let set = hutchinson_iterate(&tri, 0.5, 3).unwrap();
        let mut buf = Vec::new();
        write_copies_svg(&set, &tri, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<polygon ").count(), 27);
    }

    #[test]
    fn copies_csv_rows() {
        let tri = generate_polytope(Family::Polygon(3), 2, 1.0).unwrap();
        let set = hutchinson_iterate(&tri, 0.5, 2).unwrap();
        let mut buf = Vec::new();
        write_copies_csv(&set, 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x1,x2,copy,ancestry");
        assert_eq!(lines.len(), 1 + 9 * 3);
        assert!(lines[1].ends_with(",1,1-1"));
        assert!(lines[27].ends_with(",9,3-3"));
    }
}
