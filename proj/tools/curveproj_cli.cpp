// CLI entry point; filled in together with the report module.
int main() { return 0; }
