//! Compiles the code blocks of the guide as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct Introduction;

#[doc = include_str!("../../../book/src/special-functions.md")]
pub struct SpecialFunctions;

#[doc = include_str!("../../../book/src/suq2-model.md")]
pub struct Suq2Model;

#[doc = include_str!("../../../book/src/multipliers.md")]
pub struct Multipliers;

#[doc = include_str!("../../../book/src/fusion.md")]
pub struct Fusion;

#[doc = include_str!("../../../book/src/structure.md")]
pub struct Structure;

#[doc = include_str!("../../../book/src/schedule.md")]
pub struct Schedule;

#[doc = include_str!("../../../book/src/cli.md")]
pub struct Cli;
