use super::QSeries;

/// Which Rogers–Ramanujan sum to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RrVariant {
    /// `G(q) = ∑ q^{n²} / (q;q)_n`
    G,
    /// `H(q) = ∑ q^{n²+n} / (q;q)_n`
    H,
}

/// Sum side of the Rogers–Ramanujan identities, truncated at order `n`.
///
/// Only terms whose leading power fits below the truncation contribute.
pub fn rr_sum_side(variant: RrVariant, n: usize) -> QSeries {
    let mut out = QSeries::zero(n);
    // 1/(q;q)_j, updated in place as j grows
    let mut denom_inv = QSeries::one(n);
    let mut j = 0usize;
    loop {
        let shift = match variant {
            RrVariant::G => j * j,
            RrVariant::H => j * j + j,
        };
        if shift > n {
            break;
        }
        if j > 0 {
            denom_inv.div_one_minus_q_pow(j);
        }
        for (i, c) in denom_inv.coeffs[..=n - shift].iter().enumerate() {
            out.coeffs[i + shift] += c;
        }
        j += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term() {
        assert!(rr_sum_side(RrVariant::G, 0).is_one());
        assert!(rr_sum_side(RrVariant::H, 0).is_one());
    }

    #[test]
    fn first_terms() {
        // G = 1 + q + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6
        let g = rr_sum_side(RrVariant::G, 6);
        assert_eq!(g, QSeries::from_i64s(&[1, 1, 1, 1, 2, 2, 3]).unwrap());
        // H = 1 + q^2 + q^3 + q^4 + q^5 + 2q^6
        let h = rr_sum_side(RrVariant::H, 6);
        assert_eq!(h, QSeries::from_i64s(&[1, 0, 1, 1, 1, 1, 2]).unwrap());
    }
}
