//! Binomial probabilities in log space (Loader's saddle-point form), stable for
//! `n` in the millions.

use crate::math;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

// stirlerr(k) = ln k! - ((k + 1/2) ln k - k + ln sqrt(2 pi)), k = 0..=15
#[allow(clippy::excessive_precision)]
const STIRLERR_SMALL: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258_219_670_2,
    0.041_340_695_955_409_294_093_822_1,
    0.027_677_925_684_998_339_148_789_29,
    0.020_790_672_103_765_093_111_522_77,
    0.016_644_691_189_821_192_163_194_87,
    0.013_876_128_823_070_747_998_745_73,
    0.011_896_709_945_891_770_095_055_72,
    0.010_411_265_261_972_096_497_478_567,
    0.009_255_462_182_712_732_917_728_637,
    0.008_330_563_433_362_871_256_469_318,
    0.007_573_675_487_951_840_794_972_024,
    0.006_942_840_107_209_529_865_664_152,
    0.006_408_994_188_004_207_068_439_631,
    0.005_951_370_112_758_847_735_624_416,
    0.005_554_733_551_962_801_371_038_690,
];

fn stirlerr(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15 {
        return STIRLERR_SMALL[n as usize];
    }
    let x = n as f64;
    let xx = x * x;
    if n > 500 {
        (S0 - S1 / xx) / x
    } else if n > 80 {
        (S0 - (S1 - S2 / xx) / xx) / x
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x
    }
}

// x ln(x / np) + np - x, without cancellation near x = np
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * j + 1.0);
            if next == s {
                return s;
            }
            s = next;
            j += 1.0;
        }
    }
    x * math::ln(x / np) + np - x
}

/// `ln P[Bin(n, p) = k]`; `-inf` outside `0..=n`.
pub fn ln_pmf(k: u64, n: u64, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    let q = 1.0 - p;
    if k > n {
        return f64::NEG_INFINITY;
    }
    if p == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if q == 0.0 {
        return if k == n { 0.0 } else { f64::NEG_INFINITY };
    }
    let nf = n as f64;
    if k == 0 {
        return nf * math::ln_1p(-p);
    }
    if k == n {
        return nf * math::ln(p);
    }
    let kf = k as f64;
    let lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(kf, nf * p) - bd0(nf - kf, nf * q);
    let lf = LN_2PI + math::ln(kf) + math::ln_1p(-kf / nf);
    lc - 0.5 * lf
}

/// `P[Bin(n, p) = k]`.
pub fn pmf(k: u64, n: u64, p: f64) -> f64 {
    math::exp(ln_pmf(k, n, p))
}

/// `P[Bin(n, p) > k]`, summed term by term until the tail is negligible.
pub fn upper_tail(k: u64, n: u64, p: f64) -> f64 {
    let mean = n as f64 * p;
    let mut sum = 0.0;
    for j in k.saturating_add(1)..=n {
        let term = pmf(j, n, p);
        sum += term;
        if j as f64 > mean && term <= sum * 1e-18 {
            break;
        }
    }
    sum
}
