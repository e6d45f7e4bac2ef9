use num_bigint::BigInt;

use super::{SegmentationError, ThresholdValue};
use crate::frame::Histogram;

/// Otsu's threshold: the `t` minimizing the weighted within-class variance
/// of `{v <= t}` and `{v > t}`, lowest `t` on ties.
///
/// Minimizing within-class variance is the same as maximizing the
/// between-class term `n0 n1 (mu0 - mu1)^2`, which for integer histograms
/// equals `D^2 / (n0 n1)` with `D = s0 N - S n0` (`s0`, `S` being the
/// intensity sums of class 0 and of the whole image). Candidates are compared
/// by cross-multiplying those fractions in exact integer arithmetic, so ties
/// are detected exactly and never depend on floating-point rounding.
pub fn otsu_threshold(h: &Histogram) -> Result<ThresholdValue, SegmentationError> {
    let bins = h.bins();
    let occupied = bins.iter().filter(|&&c| c > 0).count();
    if occupied < 2 {
        return Err(SegmentationError::DegenerateHistogram);
    }

    let total = h.total() as u128;
    let sum: u128 = bins.iter().enumerate().map(|(v, &c)| v as u128 * c as u128).sum();
    let (total_big, sum_big) = (BigInt::from(total), BigInt::from(sum));

    let mut n0: u128 = 0;
    let mut s0: u128 = 0;
    let mut best: Option<(u8, BigInt, BigInt)> = None;

    for (t, &count) in bins.iter().enumerate() {
        n0 += count as u128;
        s0 += t as u128 * count as u128;
        let n1 = total - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let d = BigInt::from(s0) * &total_big - &sum_big * BigInt::from(n0);
        let num = &d * &d;
        let den = BigInt::from(n0) * BigInt::from(n1);
        let better = match &best {
            None => true,
            Some((_, best_num, best_den)) => &num * best_den > best_num * &den,
        };
        if better {
            best = Some((t as u8, num, den));
        }
    }
    let (t, _, _) = best.expect("two occupied bins give at least one split");
    Ok(ThresholdValue(t))
}
