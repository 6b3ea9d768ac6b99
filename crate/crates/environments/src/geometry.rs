//! Small 2-D helpers shared by the continuous environments.

pub fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

pub fn clamp_to_rect(p: (f64, f64), w: f64, h: f64) -> (f64, f64) {
    (p.0.clamp(0.0, w), p.1.clamp(0.0, h))
}

/// Distance from `origin` along `dir` (unit) to the boundary of the
/// axis-aligned box `[0,w]×[0,h]`, assuming the origin is inside.
pub fn ray_to_rect_boundary(origin: (f64, f64), dir: (f64, f64), w: f64, h: f64) -> f64 {
    let mut t = f64::INFINITY;
    if dir.0 > 1e-12 {
        t = t.min((w - origin.0) / dir.0);
    } else if dir.0 < -1e-12 {
        t = t.min(-origin.0 / dir.0);
    }
    if dir.1 > 1e-12 {
        t = t.min((h - origin.1) / dir.1);
    } else if dir.1 < -1e-12 {
        t = t.min(-origin.1 / dir.1);
    }
    t.max(0.0)
}

/// Nearest intersection distance of a ray with the axis-aligned box
/// `[x0,x1]×[y0,y1]` (slab method); `None` when the ray misses.
pub fn ray_to_aabb(
    origin: (f64, f64),
    dir: (f64, f64),
    (x0, y0, x1, y1): (f64, f64, f64, f64),
) -> Option<f64> {
    let inv = |d: f64| if d.abs() < 1e-12 { f64::INFINITY } else { 1.0 / d };
    let (ix, iy) = (inv(dir.0), inv(dir.1));
    let (mut t0x, mut t1x) = ((x0 - origin.0) * ix, (x1 - origin.0) * ix);
    if t0x > t1x {
        std::mem::swap(&mut t0x, &mut t1x);
    }
    let (mut t0y, mut t1y) = ((y0 - origin.1) * iy, (y1 - origin.1) * iy);
    if t0y > t1y {
        std::mem::swap(&mut t0y, &mut t1y);
    }
    let enter = t0x.max(t0y);
    let exit = t1x.min(t1y);
    if exit >= enter.max(0.0) {
        Some(enter.max(0.0))
    } else {
        None
    }
}

/// Nearest intersection distance of a ray with a circle; `None` on a miss.
pub fn ray_to_circle(
    origin: (f64, f64),
    dir: (f64, f64),
    center: (f64, f64),
    radius: f64,
) -> Option<f64> {
    let ox = origin.0 - center.0;
    let oy = origin.1 - center.1;
    let b = ox * dir.0 + oy * dir.1;
    let c = ox * ox + oy * oy - radius * radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t = if -b - sq >= 0.0 { -b - sq } else { -b + sq };
    if t >= 0.0 {
        Some(t)
    } else {
        None
    }
}
