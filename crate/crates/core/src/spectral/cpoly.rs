//! Dense complex polynomials and simultaneous root extraction.

use num_complex::Complex64;

/// Polynomial with coefficients in increasing degree order.
#[derive(Clone, Debug)]
pub struct CPoly {
    pub coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = CPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .map_or(false, |c| c.norm() < 1e-300)
        {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly::new(vec![]);
        }
        CPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i + 1) as f64)
                .collect(),
        )
    }

    /// All roots by the Durand-Kerner iteration with a Newton polish.
    ///
    /// Degrees here stay small (<= 33); 500 sweeps with a spread start
    /// converge far below the 1e-8 separation we ever rely on.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        let lead = *self.coeffs.last().unwrap();
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&c| c / lead).collect();
        // radius bound: 1 + max |a_k|
        let r = 1.0
            + monic[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0_f64, f64::max);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                Complex64::from_polar(0.5 * r.max(1.0), ang)
            })
            .collect();
        let eval_monic = |x: Complex64| -> Complex64 {
            let mut acc = Complex64::new(1.0, 0.0);
            for &c in monic[..n].iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        for _ in 0..500 {
            let mut maxstep = 0.0_f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= z[i] - z[j];
                    }
                }
                if denom.norm() < 1e-290 {
                    continue;
                }
                let step = eval_monic(z[i]) / denom;
                z[i] -= step;
                maxstep = maxstep.max(step.norm());
            }
            if maxstep < 1e-14 {
                break;
            }
        }
        // Newton polish against the original coefficients
        let dp = self.derivative();
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let d = dp.eval(*zi);
                if d.norm() > 1e-280 {
                    *zi -= self.eval(*zi) / d;
                }
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_roots() {
        // s^2 + s/2 - 3/2: roots 1 and -3/2
        let p = CPoly::new(vec![c(-1.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)]);
        let mut roots = p.roots();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0] - c(-1.5, 0.0)).norm() < 1e-12);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z - 2)(z + 1 - i)
        let r1 = c(0.0, 1.0);
        let r2 = c(2.0, 0.0);
        let r3 = c(-1.0, 1.0);
        let p = CPoly::new(vec![
            -r1 * r2 * r3,
            r1 * r2 + r1 * r3 + r2 * r3,
            -(r1 + r2 + r3),
            c(1.0, 0.0),
        ]);
        let roots = p.roots();
        for target in [r1, r2, r3] {
            assert!(
                roots.iter().any(|z| (z - target).norm() < 1e-10),
                "missing {target}"
            );
        }
    }

    #[test]
    fn high_degree_unit_spread() {
        // z^12 - 1
        let mut coeffs = vec![c(0.0, 0.0); 13];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[12] = c(1.0, 0.0);
        let roots = CPoly::new(coeffs).roots();
        assert_eq!(roots.len(), 12);
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }
}
