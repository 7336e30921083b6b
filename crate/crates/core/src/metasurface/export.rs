use std::fmt::Write as _;

use super::layout::MetasurfaceLayout;
use super::supercell::SupercellRecord;
use crate::format::{csv_row, sig12};
use crate::Result;

pub const LAYOUT_CSV_HEADER: &str = "x_nm,y_nm,lx_nm,ly_nm,rotation_deg,phase_rad";
pub const SUPERCELL_CSV_HEADER: &str = "n,length_lambda0,N,theta_deg,reflectance";

/// Spec header, supercell records and element array as compact JSON.
pub fn layout_json(layout: &MetasurfaceLayout) -> Result<String> {
    let mut s = serde_json::to_string(layout)?;
    s.push('\n');
    Ok(s)
}

pub fn layout_csv(layout: &MetasurfaceLayout) -> String {
    let mut out = String::with_capacity(64 * (layout.elements.len() + 1));
    out.push_str(LAYOUT_CSV_HEADER);
    out.push('\n');
    for e in &layout.elements {
        let [lx, ly] = e.geometry.size_nm();
        out.push_str(&csv_row(&[
            e.center_nm[0],
            e.center_nm[1],
            lx,
            ly,
            e.geometry.rotation_rad().to_degrees(),
            e.encoded_phase,
        ]));
        out.push('\n');
    }
    out
}

/// Static drawing: one rectangle per antenna, fill hue by encoded phase,
/// supercell boundaries as circles.
pub fn layout_svg(layout: &MetasurfaceLayout) -> String {
    let r = layout.spec.aperture_radius_nm;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        sig12(-r),
        sig12(-r),
        sig12(2.0 * r),
        sig12(2.0 * r)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{0}" y="{0}" width="{1}" height="{1}" fill="#d4af37"/>"##,
        sig12(-r),
        sig12(2.0 * r)
    );
    for e in &layout.elements {
        let [lx, ly] = e.geometry.size_nm();
        let [x, y] = e.center_nm;
        let hue = (e.encoded_phase.to_degrees()).round() as i64 % 360;
        // SVG y grows downwards
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" transform="rotate({} {} {})" fill="hsl({hue},70%,40%)"/>"#,
            sig12(x - lx / 2.0),
            sig12(-y - ly / 2.0),
            sig12(lx),
            sig12(ly),
            sig12(-e.geometry.rotation_rad().to_degrees()),
            sig12(x),
            sig12(-y),
        );
    }
    for c in &layout.supercells {
        let _ = writeln!(
            out,
            r#"<circle cx="0" cy="0" r="{}" fill="none" stroke="white" stroke-width="{}"/>"#,
            sig12(c.r_end_nm),
            sig12(layout.spec.lambda0_nm / 40.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Supercell table; `reflectance` maps the inner incidence angle (degrees) to
/// the power reflectance of that annulus.
pub fn supercell_table_csv(records: &[SupercellRecord], lambda0_nm: f64, reflectance: impl Fn(f64) -> f64) -> String {
    let mut out = String::from(SUPERCELL_CSV_HEADER);
    out.push('\n');
    for c in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            c.index,
            sig12(c.length_exact_nm / lambda0_nm),
            c.n_unit_cells,
            sig12(c.theta_inner_deg),
            sig12(reflectance(c.theta_inner_deg))
        );
    }
    out
}
