//! Benchmark inputs shared by the criterion targets.

use shiftlab_core::golden;
use shiftlab_core::MonomialIdeal;

pub fn example1() -> MonomialIdeal {
    golden::example1()
}

pub fn example2() -> MonomialIdeal {
    golden::example2()
}
