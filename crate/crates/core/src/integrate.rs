//! Classical fixed-step fourth-order Runge–Kutta for small complex systems.

use num_complex::Complex64;

/// One RK4 step of `y' = f(t, y)` from `t` to `t + h`.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[Complex64; N], h: f64) -> [Complex64; N]
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
{
    let axpy =
        |y: &[Complex64; N], k: &[Complex64; N], s: f64| -> [Complex64; N] { std::array::from_fn(|i| y[i] + k[i] * s) };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(t + h, &axpy(y, &k3, h));
    std::array::from_fn(|i| y[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0))
}

/// Integrates from `t0` to `t_end` with step `dt`, shortening the final step so
/// the last sample lands on `t_end`. Calls `observe` on every sample including
/// the initial one; an `Err` from `observe` aborts the integration.
pub fn rk4_fixed<const N: usize, F, O, E>(
    f: F,
    t0: f64,
    y0: [Complex64; N],
    t_end: f64,
    dt: f64,
    mut observe: O,
) -> Result<[Complex64; N], E>
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
    O: FnMut(f64, &[Complex64; N]) -> Result<(), E>,
{
    let span = t_end - t0;
    let steps = if span <= 0.0 {
        0
    } else {
        (span / dt - 1e-9).ceil().max(1.0) as usize
    };
    let mut y = y0;
    observe(t0, &y)?;
    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        let h = if k + 1 == steps { t_end - t } else { dt };
        y = rk4_step(&f, t, &y, h);
        let t_next = if k + 1 == steps {
            t_end
        } else {
            t0 + (k + 1) as f64 * dt
        };
        observe(t_next, &y)?;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn exponential_decay_fourth_order() {
        let f = |_t: f64, y: &[Complex64; 1]| [-y[0]];
        let err = |dt: f64| {
            let y =
                rk4_fixed::<1, _, _, Infallible>(f, 0.0, [Complex64::new(1.0, 0.0)], 1.0, dt, |_, _| Ok(())).unwrap();
            (y[0].re - (-1.0f64).exp()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn lands_on_end_time() {
        let mut times = Vec::new();
        rk4_fixed::<1, _, _, Infallible>(
            |_, _| [Complex64::new(1.0, 0.0)],
            0.0,
            [Complex64::new(0.0, 0.0)],
            0.25,
            0.1,
            |t, _| {
                times.push(t);
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(times.len(), 4);
        assert_eq!(*times.last().unwrap(), 0.25);
    }

    #[test]
    fn zero_span_emits_initial_sample_only() {
        let mut n = 0;
        rk4_fixed::<1, _, _, Infallible>(
            |_, y| *y,
            0.0,
            [Complex64::new(1.0, 0.0)],
            0.0,
            0.1,
            |_, _| {
                n += 1;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(n, 1);
    }
}
