use crate::groupoid::FiniteGroupoid;

/// Dense convolution over `Z/n` on residue vectors indexed by arrow id.
///
/// This is the hot path of the exhaustive oracles; it is tested against the
/// sparse [`AlgebraElem`](super::AlgebraElem) convolution.
#[derive(Debug, Clone)]
pub struct ModKernel {
    n: u32,
    arrows: usize,
    /// `(g, h, g∘h)` for every composable pair.
    triples: Vec<(u32, u32, u32)>,
    /// For each `g`: `(α, α∘g)` for every `α` with `d(α) = r(g)`.
    right: Vec<Vec<(u32, u32)>>,
}

impl ModKernel {
    pub fn new(groupoid: &FiniteGroupoid, n: u32) -> Self {
        assert!(n >= 2);
        let arrows = groupoid.arrow_count();
        let triples: Vec<(u32, u32, u32)> = groupoid
            .composable_pairs()
            .into_iter()
            .map(|(g, h, gh)| (g as u32, h as u32, gh as u32))
            .collect();
        let mut right = vec![Vec::new(); arrows];
        for &(a, g, ag) in &triples {
            right[g as usize].push((a, ag));
        }
        ModKernel { n, arrows, triples, right }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn arrows(&self) -> usize {
        self.arrows
    }

    pub fn convolve(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.arrows];
        for &(g, h, gh) in &self.triples {
            let (a, b) = (x[g as usize], y[h as usize]);
            if a != 0 && b != 0 {
                let o = &mut out[gh as usize];
                *o = (*o + a * b) % self.n;
            }
        }
        out
    }

    /// `x * δ_g`.
    pub fn times_delta(&self, x: &[u32], g: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.arrows];
        for &(a, ag) in &self.right[g] {
            out[ag as usize] = x[a as usize];
        }
        out
    }

    /// Rows of the linear map `y ↦ c * y`: entry `(η, β)` is the
    /// coefficient of `y[β]` in `(c * y)[η]`. Zero rows are dropped.
    pub fn left_rows(&self, c: &[u32], rows: &mut Vec<Vec<u32>>) {
        let mut m = vec![vec![0u32; self.arrows]; self.arrows];
        for &(g, h, gh) in &self.triples {
            let a = c[g as usize];
            if a != 0 {
                let e = &mut m[gh as usize][h as usize];
                *e = (*e + a) % self.n;
            }
        }
        rows.extend(m.into_iter().filter(|r| r.iter().any(|&v| v != 0)));
    }

    pub fn dot(&self, row: &[u32], y: &[u32]) -> u32 {
        row.iter().zip(y).fold(0, |acc, (&r, &v)| (acc + r * v) % self.n)
    }
}
