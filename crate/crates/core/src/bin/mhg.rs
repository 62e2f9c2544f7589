fn main() {
    mhg_core::cli::main()
}
