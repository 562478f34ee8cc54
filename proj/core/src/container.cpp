#include "bcdi/container.hpp"

#include <bit>
#include <cmath>

#include "bcdi/io.hpp"

namespace bcdi {
namespace {

constexpr std::string_view kMagic = "BCD1";

template <typename U>
void put(std::string& out, U value) {
    for (std::size_t b = 0; b < sizeof(U); ++b) {
        out.push_back(static_cast<char>((value >> (8 * b)) & 0xFF));
    }
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    template <typename U>
    U get() {
        if (bytes_.size() - pos_ < sizeof(U)) {
            throw IoError("container truncated");
        }
        U value = 0;
        for (std::size_t b = 0; b < sizeof(U); ++b) {
            value |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
        }
        pos_ += sizeof(U);
        return value;
    }

    [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::size_t scalars_per_element(DType dtype) { return dtype == DType::Complex128 ? 2 : 1; }

} // namespace

std::uint64_t ArrayContainer::element_count() const {
    std::uint64_t n = 1;
    for (std::uint64_t d : dims) {
        n *= d;
    }
    return n;
}

std::string encode(const ArrayContainer& array) {
    require(array.dtype == DType::Real64 || array.dtype == DType::Complex128, "unknown dtype");
    require(array.payload.size() == array.element_count() * scalars_per_element(array.dtype),
            "payload length does not match dims");
    std::string out;
    out.reserve(16 + 8 * array.dims.size() + 8 * array.payload.size());
    out.append(kMagic);
    put<std::uint32_t>(out, kContainerVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.dtype));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.dims.size()));
    for (std::uint64_t d : array.dims) {
        put<std::uint64_t>(out, d);
    }
    for (double v : array.payload) {
        put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    }
    return out;
}

ArrayContainer decode(std::string_view bytes) {
    if (bytes.substr(0, kMagic.size()) != kMagic) {
        throw IoError("not a BCD1 container");
    }
    Reader in(bytes.substr(kMagic.size()));
    const auto version = in.get<std::uint32_t>();
    if (version != kContainerVersion) {
        throw IoError("unsupported container version " + std::to_string(version));
    }
    ArrayContainer array;
    const auto dtype = in.get<std::uint32_t>();
    if (dtype != 1 && dtype != 2) {
        throw IoError("unknown container dtype " + std::to_string(dtype));
    }
    array.dtype = static_cast<DType>(dtype);
    const auto ndim = in.get<std::uint32_t>();
    if (ndim == 0 || ndim > 8) {
        throw IoError("unsupported container rank " + std::to_string(ndim));
    }
    for (std::uint32_t a = 0; a < ndim; ++a) {
        array.dims.push_back(in.get<std::uint64_t>());
    }
    const std::uint64_t scalars = array.element_count() * scalars_per_element(array.dtype);
    if (in.remaining() != scalars * 8) {
        throw IoError("container payload length does not match its dims");
    }
    array.payload.resize(scalars);
    for (double& v : array.payload) {
        v = std::bit_cast<double>(in.get<std::uint64_t>());
        if (!std::isfinite(v)) {
            throw IoError("container payload holds a non-finite value");
        }
    }
    return array;
}

ArrayContainer to_container(const RealVolume& volume) {
    const auto& d = volume.shape().dims;
    return {DType::Real64, {d[0], d[1], d[2]}, std::vector<double>(volume.values().begin(), volume.values().end())};
}

ArrayContainer to_container(const ComplexVolume& volume) {
    const auto& d = volume.shape().dims;
    ArrayContainer array{DType::Complex128, {d[0], d[1], d[2]}, {}};
    array.payload.reserve(2 * volume.size());
    for (const auto& z : volume.values()) {
        array.payload.push_back(z.real());
        array.payload.push_back(z.imag());
    }
    return array;
}

ArrayContainer to_container(const RealImage& image) {
    return {DType::Real64, {image.rows(), image.cols()},
            std::vector<double>(image.values().begin(), image.values().end())};
}

namespace {

Shape3 volume_shape(const ArrayContainer& array) {
    require(array.dims.size() == 2 || array.dims.size() == 3, "expected a rank-2 or rank-3 array");
    return Shape3{{array.dims[0], array.dims[1], array.dims.size() == 3 ? array.dims[2] : 1}};
}

} // namespace

RealVolume to_real_volume(const ArrayContainer& array) {
    require(array.dtype == DType::Real64, "expected a real64 array");
    RealVolume volume(volume_shape(array));
    std::copy(array.payload.begin(), array.payload.end(), volume.values().begin());
    return volume;
}

ComplexVolume to_complex_volume(const ArrayContainer& array) {
    ComplexVolume volume(volume_shape(array));
    if (array.dtype == DType::Real64) {
        for (std::size_t i = 0; i < volume.size(); ++i) {
            volume[i] = array.payload[i];
        }
    } else {
        for (std::size_t i = 0; i < volume.size(); ++i) {
            volume[i] = complex{array.payload[2 * i], array.payload[2 * i + 1]};
        }
    }
    return volume;
}

void write_container(const std::filesystem::path& path, const ArrayContainer& array) {
    io::write_file_atomic(path, encode(array));
}

ArrayContainer read_container(const std::filesystem::path& path) {
    try {
        return decode(io::read_file(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

} // namespace bcdi
