#include "hqnn/dataset.hpp"

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace hqnn {

namespace {

std::uint32_t read_be32(std::istream &in, const std::string &path) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char *>(bytes), 4);
    if (!in) {
        throw DataFormatError("truncated header in " + path);
    }
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

void write_be32(std::ostream &out, std::uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
        static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char *>(bytes), 4);
}

std::vector<unsigned char> read_exact(std::istream &in, std::size_t count,
                                      const std::string &path) {
    std::vector<unsigned char> buf(count);
    in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
        throw DataFormatError("truncated file " + path);
    }
    return buf;
}

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
constexpr std::size_t kCifarRecordBytes = 3073;

} // namespace

Dataset Dataset::subset(std::span<const int> indices) const {
    Dataset out;
    out.channels = channels;
    out.height = height;
    out.width = width;
    out.num_classes = num_classes;
    const std::size_t dim = sample_dim();
    out.images.reserve(indices.size() * dim);
    out.labels.reserve(indices.size());
    for (int idx : indices) {
        const auto img = image(static_cast<std::size_t>(idx));
        out.images.insert(out.images.end(), img.begin(), img.end());
        out.labels.push_back(labels[static_cast<std::size_t>(idx)]);
    }
    return out;
}

Dataset load_mnist_idx(const std::string &images_path,
                       const std::string &labels_path) {
    std::ifstream img_in(images_path, std::ios::binary);
    if (!img_in) {
        throw DataFormatError("cannot open " + images_path);
    }
    const std::uint32_t img_magic = read_be32(img_in, images_path);
    if (img_magic != kIdxImagesMagic) {
        throw DataFormatError("bad IDX image magic in " + images_path);
    }
    const std::uint32_t n = read_be32(img_in, images_path);
    const std::uint32_t rows = read_be32(img_in, images_path);
    const std::uint32_t cols = read_be32(img_in, images_path);
    const std::size_t pixel_count =
        static_cast<std::size_t>(n) * rows * cols;
    const auto pixels = read_exact(img_in, pixel_count, images_path);
    char extra;
    if (img_in.read(&extra, 1)) {
        throw DataFormatError("trailing bytes in " + images_path);
    }

    std::ifstream lbl_in(labels_path, std::ios::binary);
    if (!lbl_in) {
        throw DataFormatError("cannot open " + labels_path);
    }
    const std::uint32_t lbl_magic = read_be32(lbl_in, labels_path);
    if (lbl_magic != kIdxLabelsMagic) {
        throw DataFormatError("bad IDX label magic in " + labels_path);
    }
    const std::uint32_t n_labels = read_be32(lbl_in, labels_path);
    if (n_labels != n) {
        throw DataFormatError("image/label count mismatch: " +
                              std::to_string(n) + " vs " +
                              std::to_string(n_labels));
    }
    const auto raw_labels = read_exact(lbl_in, n_labels, labels_path);

    Dataset data;
    data.channels = 1;
    data.height = static_cast<int>(rows);
    data.width = static_cast<int>(cols);
    data.num_classes = 10;
    data.images.resize(pixel_count);
    for (std::size_t i = 0; i < pixel_count; ++i) {
        data.images[i] = static_cast<float>(pixels[i]) / 255.0f;
    }
    data.labels.resize(n_labels);
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
        if (raw_labels[i] > 9) {
            throw DataFormatError("label byte out of range in " + labels_path);
        }
        data.labels[i] = raw_labels[i];
    }
    return data;
}

void save_mnist_idx(const std::string &images_path,
                    const std::string &labels_path, const Dataset &data) {
    std::ofstream img_out(images_path, std::ios::binary);
    if (!img_out) {
        throw DataFormatError("cannot write " + images_path);
    }
    write_be32(img_out, kIdxImagesMagic);
    write_be32(img_out, static_cast<std::uint32_t>(data.size()));
    write_be32(img_out, static_cast<std::uint32_t>(data.height));
    write_be32(img_out, static_cast<std::uint32_t>(data.width));
    for (float v : data.images) {
        const long byte = std::lround(static_cast<double>(v) * 255.0);
        img_out.put(static_cast<char>(std::clamp(byte, 0L, 255L)));
    }

    std::ofstream lbl_out(labels_path, std::ios::binary);
    if (!lbl_out) {
        throw DataFormatError("cannot write " + labels_path);
    }
    write_be32(lbl_out, kIdxLabelsMagic);
    write_be32(lbl_out, static_cast<std::uint32_t>(data.size()));
    for (int label : data.labels) {
        lbl_out.put(static_cast<char>(label));
    }
}

Dataset load_cifar10_bin(const std::vector<std::string> &batch_paths) {
    if (batch_paths.empty()) {
        throw ConfigError("no CIFAR-10 batch files given");
    }
    Dataset data;
    data.channels = 3;
    data.height = 32;
    data.width = 32;
    data.num_classes = 10;
    for (const std::string &path : batch_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw DataFormatError("cannot open " + path);
        }
        in.seekg(0, std::ios::end);
        const std::streamoff bytes = in.tellg();
        in.seekg(0, std::ios::beg);
        if (bytes <= 0 || bytes % static_cast<std::streamoff>(kCifarRecordBytes) != 0) {
            throw DataFormatError("file size of " + path +
                                  " is not a multiple of 3073");
        }
        const std::size_t records =
            static_cast<std::size_t>(bytes) / kCifarRecordBytes;
        for (std::size_t r = 0; r < records; ++r) {
            const auto record = read_exact(in, kCifarRecordBytes, path);
            if (record[0] > 9) {
                throw DataFormatError("label byte out of range in " + path);
            }
            data.labels.push_back(record[0]);
            for (std::size_t i = 1; i < kCifarRecordBytes; ++i) {
                data.images.push_back(static_cast<float>(record[i]) / 255.0f);
            }
        }
    }
    return data;
}

DataSplits make_splits(const Dataset &data, const SplitPlan &plan) {
    const std::size_t need = plan.train_count + plan.val_count + plan.test_count;
    if (need > data.size()) {
        throw ConfigError("split plan needs " + std::to_string(need) +
                          " samples, dataset has " + std::to_string(data.size()));
    }
    const std::vector<int> perm = seeded_permutation(data.size(), plan.shuffle_seed);
    DataSplits splits;
    std::span<const int> all(perm);
    splits.train = data.subset(all.subspan(0, plan.train_count));
    splits.val = data.subset(all.subspan(plan.train_count, plan.val_count));
    splits.test = data.subset(
        all.subspan(plan.train_count + plan.val_count, plan.test_count));
    return splits;
}

std::vector<std::vector<int>> batches(std::size_t n, std::size_t batch_size,
                                      std::uint64_t epoch_seed) {
    if (batch_size < 1) {
        throw ConfigError("batch_size must be >= 1");
    }
    const std::vector<int> perm = seeded_permutation(n, epoch_seed);
    std::vector<std::vector<int>> out;
    for (std::size_t start = 0; start < n; start += batch_size) {
        const std::size_t end = std::min(n, start + batch_size);
        out.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(start),
                         perm.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return out;
}

Dataset synthetic_fixture(const std::string &kind, std::size_t n,
                          std::uint64_t seed) {
    if (kind != "two_gaussians") {
        throw ConfigError("unknown synthetic fixture kind: " + kind);
    }
    Dataset data;
    data.channels = 1;
    data.height = 2;
    data.width = 2;
    data.num_classes = 2;
    data.images.reserve(n * 4);
    data.labels.reserve(n);
    Rng rng(mix_seed(seed, fnv1a("two_gaussians")));
    // Class means on opposite corners of the pixel hypercube; sigma small
    // enough to keep the classes linearly separable.
    const double means[2][4] = {{0.85, 0.15, 0.85, 0.15},
                                {0.15, 0.85, 0.15, 0.85}};
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2); // balanced within +-1
        data.labels.push_back(label);
        for (int p = 0; p < 4; ++p) {
            const double noise = rng.uniform(-0.12, 0.12);
            const double v = std::clamp(means[label][p] + noise, 0.0, 1.0);
            data.images.push_back(static_cast<float>(v));
        }
    }
    return data;
}

const DatasetPreset &dataset_preset(const std::string &name) {
    static const DatasetPreset mnist{
        "mnist", FrontendArch::grayscale_mlp, 1,  28, 28, 10, 8000, 2000,
        5000,    10,                          64, 1e-2, 128, 4, 6,  true};
    static const DatasetPreset cifar10{
        "cifar10", FrontendArch::rgb_cnn, 3,   32,   32,  10, 20000, 5000,
        10000,     15,                    128, 1e-3, 128, 4,  2,     true};
    // Representable for documentation; JPEG ingestion is out of scope, so
    // loading raises a clear error.
    static const DatasetPreset intel{
        "intel", FrontendArch::rgb_cnn, 3,  32,   32,  6, 11228, 2806,
        3000,    10,                    64, 1e-3, 128, 4, 2,     false};
    static const DatasetPreset synthetic{
        "synthetic", FrontendArch::grayscale_mlp, 1,  2,    2, 2, 192, 64,
        64,          4,                           16, 1e-2, 8, 2, 1,  true};
    if (name == "mnist") {
        return mnist;
    }
    if (name == "cifar10") {
        return cifar10;
    }
    if (name == "intel") {
        return intel;
    }
    if (name == "synthetic") {
        return synthetic;
    }
    throw ConfigError("unknown dataset preset: " + name);
}

DataSplits load_preset_splits(const DatasetPreset &preset,
                              const std::string &data_dir, std::uint64_t seed) {
    if (!preset.loadable) {
        throw ConfigError("unsupported dataset: " + preset.name +
                          " (JPEG ingestion is out of scope; use mnist, "
                          "cifar10, or synthetic)");
    }
    const std::uint64_t trainval_seed = mix_seed(seed, fnv1a("split-trainval"));
    const std::uint64_t test_seed = mix_seed(seed, fnv1a("split-test"));

    if (preset.name == "synthetic") {
        Dataset all = synthetic_fixture(
            "two_gaussians",
            preset.train_count + preset.val_count + preset.test_count, seed);
        return make_splits(all, {preset.train_count, preset.val_count,
                                 preset.test_count, trainval_seed});
    }

    Dataset train_part;
    Dataset test_part;
    if (preset.name == "mnist") {
        train_part = load_mnist_idx(data_dir + "/train-images-idx3-ubyte",
                                    data_dir + "/train-labels-idx1-ubyte");
        test_part = load_mnist_idx(data_dir + "/t10k-images-idx3-ubyte",
                                   data_dir + "/t10k-labels-idx1-ubyte");
    } else if (preset.name == "cifar10") {
        std::vector<std::string> train_files;
        for (int i = 1; i <= 5; ++i) {
            train_files.push_back(data_dir + "/data_batch_" + std::to_string(i) +
                                  ".bin");
        }
        train_part = load_cifar10_bin(train_files);
        test_part = load_cifar10_bin({data_dir + "/test_batch.bin"});
    } else {
        throw ConfigError("no loader wired for preset: " + preset.name);
    }

    DataSplits splits;
    {
        DataSplits tv = make_splits(
            train_part, {preset.train_count, preset.val_count, 0, trainval_seed});
        splits.train = std::move(tv.train);
        splits.val = std::move(tv.val);
    }
    if (preset.test_count > test_part.size()) {
        throw ConfigError("test split larger than the official test partition");
    }
    const std::vector<int> perm = seeded_permutation(test_part.size(), test_seed);
    splits.test = test_part.subset(
        std::span<const int>(perm).subspan(0, preset.test_count));
    return splits;
}

} // namespace hqnn
