/// Wires `+ - * unary-` for both owned and borrowed operands onto the
/// inherent `add_ref`/`sub_ref`/`mul_ref`/`neg_ref` of a ring element type.
macro_rules! forward_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, other: &$t) -> $t {
                self.add_ref(other)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, other: $t) -> $t {
                self.add_ref(&other)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, other: &$t) -> $t {
                self.sub_ref(other)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, other: $t) -> $t {
                self.sub_ref(&other)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, other: &$t) -> $t {
                self.mul_ref(other)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, other: $t) -> $t {
                self.mul_ref(&other)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}

pub(crate) use forward_ring_ops;
