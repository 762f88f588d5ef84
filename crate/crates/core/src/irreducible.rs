//! Dense polynomials over a small coefficient field, used only to validate
//! and search for the defining polynomials of a tower.

/// Coefficient arithmetic on integer codes `0..size()`.
pub(crate) trait CoeffRing {
    fn size(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
}

/// Integers modulo a prime.
pub(crate) struct PrimeRing(pub u32);

impl CoeffRing for PrimeRing {
    fn size(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
}

/// Remainder of `num` modulo the monic polynomial `den` (low-to-high coefficients).
fn rem_monic<R: CoeffRing>(ring: &R, num: &[u32], den: &[u32]) -> Vec<u32> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = ring.mul(lead, c);
                r[shift + i] = ring.sub(r[shift + i], t);
            }
        }
        r.pop();
    }
    r
}

/// Whether `poly` is monic of degree `degree` and has no monic factor of
/// degree between 1 and `degree / 2`.
pub(crate) fn is_irreducible<R: CoeffRing>(ring: &R, poly: &[u32], degree: u32) -> bool {
    if poly.len() != degree as usize + 1 || *poly.last().unwrap() != 1 {
        return false;
    }
    if poly.iter().any(|&c| c >= ring.size()) {
        return false;
    }
    if degree == 1 {
        return true;
    }
    // a root-free constant term is necessary; cheap early exit
    if poly[0] == 0 {
        return false;
    }
    let s = ring.size() as u64;
    for d in 1..=degree / 2 {
        let count = s.pow(d);
        let mut divisor = vec![0u32; d as usize + 1];
        divisor[d as usize] = 1;
        for code in 0..count {
            let mut c = code;
            for slot in divisor.iter_mut().take(d as usize) {
                *slot = (c % s) as u32;
                c /= s;
            }
            if rem_monic(ring, poly, &divisor).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of the given degree whose lower coefficients, read
/// as base-`size` digits low-to-high, form the smallest integer.
pub(crate) fn smallest_irreducible<R: CoeffRing>(ring: &R, degree: u32) -> Vec<u32> {
    let s = ring.size() as u64;
    let mut poly = vec![0u32; degree as usize + 1];
    poly[degree as usize] = 1;
    for code in 0..s.pow(degree) {
        let mut c = code;
        for slot in poly.iter_mut().take(degree as usize) {
            *slot = (c % s) as u32;
            c /= s;
        }
        if is_irreducible(ring, &poly, degree) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
