use super::ambient::MAX_VARS;

/// Dense exponent vector. The derived order is lexicographic with variable 0
/// most significant; it is only used for canonical storage.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Default for Mono {
    fn default() -> Self {
        Mono([0; MAX_VARS])
    }
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(v: usize) -> Mono {
        let mut m = Mono::default();
        m.0[v] = 1;
        m
    }

    pub fn from_exps(e: &[u16]) -> Mono {
        let mut m = Mono::default();
        m.0[..e.len()].copy_from_slice(e);
        m
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn deg_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.0[vars].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for (a, b) in m.0.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        m
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        self.0.iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc })
    }
}
