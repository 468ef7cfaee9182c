//! Integer polynomial multiplication by Kronecker substitution: pack each
//! operand into one big integer with fixed-width signed slots, multiply once
//! with GMP, unpack.

use rug::Integer;

fn max_bits(c: &[Integer]) -> u32 {
    c.iter().map(|v| v.significant_bits()).max().unwrap_or(0)
}

fn pack(c: &[Integer], slot: u32) -> Integer {
    match c.len() {
        0 => Integer::new(),
        1 => c[0].clone(),
        n => {
            let mid = n / 2;
            let lo = pack(&c[..mid], slot);
            let hi = pack(&c[mid..], slot);
            (hi << (slot * mid as u32)) + lo
        }
    }
}

// Every slot holds a value of magnitude below 2^(slot-2), so the low half of
// any split is the signed residue of its bit range.
fn unpack(x: Integer, slot: u32, n: usize, out: &mut Vec<Integer>) {
    if n == 1 {
        out.push(x);
        return;
    }
    let mid = n / 2;
    let bits = slot * mid as u32;
    let lo = x.clone().keep_signed_bits(bits);
    let hi = (x - &lo) >> bits;
    unpack(lo, slot, mid, out);
    unpack(hi, slot, n - mid, out);
}

/// First `len` coefficients of `a·b`.
pub(crate) fn mul_truncated(a: &[Integer], b: &[Integer], len: usize) -> Vec<Integer> {
    let a = &a[..a.len().min(len)];
    let b = &b[..b.len().min(len)];
    if a.is_empty() || b.is_empty() {
        return vec![Integer::new(); len];
    }
    let (ba, bb) = (max_bits(a), max_bits(b));
    if ba == 0 || bb == 0 {
        return vec![Integer::new(); len];
    }
    let terms = a.len().min(b.len()) as u64;
    let slot = ba + bb + (64 - terms.leading_zeros()) + 2;
    let prod = pack(a, slot) * pack(b, slot);
    let full = a.len() + b.len() - 1;
    let mut out = Vec::with_capacity(full);
    unpack(prod, slot, full, &mut out);
    out.truncate(len);
    out.resize(len, Integer::new());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schoolbook(a: &[i64], b: &[i64], len: usize) -> Vec<Integer> {
        let mut out = vec![Integer::new(); len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j < len {
                    out[i + j] += Integer::from(*x) * *y;
                }
            }
        }
        out
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn signed_products() {
        let a = [3, -7, 0, 12, -1, 5];
        let b = [-2, 9, 4, -4];
        for len in [1, 3, 6, 9, 12] {
            assert_eq!(mul_truncated(&ints(&a), &ints(&b), len), schoolbook(&a, &b, len));
        }
    }

    #[test]
    fn large_and_zero_slots() {
        let big = Integer::from(1) << 300u32;
        let a = vec![big.clone(), Integer::new(), -big.clone()];
        let b = vec![Integer::from(-1), big.clone()];
        let got = mul_truncated(&a, &b, 4);
        let sq = big.clone() * &big;
        assert_eq!(got, vec![-big.clone(), sq.clone(), big, -sq]);
        assert_eq!(mul_truncated(&[Integer::new()], &b, 2), vec![Integer::new(); 2]);
    }
}
