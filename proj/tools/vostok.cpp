#include <iostream>

int main() {
    std::cout << "vostok: CLI not wired up yet\n";
    return 0;
}
