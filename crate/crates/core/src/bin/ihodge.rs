fn main() {
  std::process::exit(invariant_hodge::cli::main_with_args(std::env::args_os()));
}
