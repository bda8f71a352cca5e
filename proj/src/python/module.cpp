// Copyright 2026 The ife Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "ife/bench.hpp"
#include "ife/slide.hpp"
#include "ife/validator.hpp"

namespace py = pybind11;

namespace {

py::dict layer_dict(const ife::LayerExtent& layer) {
  py::dict d;
  d["x_tiles"] = layer.x_tiles;
  d["y_tiles"] = layer.y_tiles;
  d["scale"] = layer.scale;
  return d;
}

py::object read_tile(const ife::Slide& slide, std::uint64_t index) {
  if (index >= slide.total_tiles()) {
    throw py::index_error("tile " + std::to_string(index) + " is out of range");
  }
  const std::uint32_t dim = slide.tile_dimension();
  const std::uint32_t channels = ife::bytes_per_pixel(slide.pixel_format());
  ife::PixelBuffer pixels;
  bool stored = false;
  {
    py::gil_scoped_release release;
    stored = slide.read_tile_into(index, pixels);
  }
  if (!stored) return py::none();
  py::array_t<std::uint8_t> out({dim, dim, channels});
  std::memcpy(out.mutable_data(), pixels.bytes.data(), pixels.bytes.size());
  return std::move(out);
}

py::dict bench(const ife::Slide& slide, std::uint32_t batch_size, std::uint32_t batches,
               std::uint64_t seed, const std::string& path) {
  ife::BenchOptions options{batch_size, batches, seed, ife::BenchPath::kDecoded};
  if (path == "compressed") {
    options.path = ife::BenchPath::kCompressed;
  } else if (path != "decoded") {
    throw py::value_error("path must be 'decoded' or 'compressed'");
  }
  ife::BenchResult result;
  {
    py::gil_scoped_release release;
    result = ife::bench_random_access(slide, options);
  }
  py::dict d;
  d["path"] = path;
  d["batch_size"] = result.batch_size;
  d["batches"] = result.tiles_per_sec;
  d["median_tiles_per_sec"] = result.median_tiles_per_sec;
  d["median_tpt_ms"] = result.median_tpt_ms;
  d["min_tpt_ms"] = result.min_tpt_ms;
  d["max_tpt_ms"] = result.max_tpt_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ife, m) {
  m.doc() = "Read-only bindings for slide containers";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ife::OpenError& e) {
      py::set_error(PyExc_OSError, e.what());
    } catch (const ife::IoError& e) {
      py::set_error(PyExc_OSError, e.what());
    } catch (const ife::NotFoundError& e) {
      py::set_error(PyExc_KeyError, e.what());
    } catch (const ife::RangeError& e) {
      py::set_error(PyExc_IndexError, e.what());
    } catch (const ife::Error& e) {
      py::set_error(PyExc_RuntimeError, e.what());
    }
  });
  py::register_exception<ife::SlideOpenError>(m, "InvalidSlideError", PyExc_ValueError);

  py::class_<ife::Slide>(m, "Slide")
      .def_property_readonly("path", [](const ife::Slide& s) { return s.view().origin(); })
      .def_property_readonly("file_size", [](const ife::Slide& s) { return s.view().size(); })
      .def_property_readonly(
          "encoding_format",
          [](const ife::Slide& s) { return std::string(ife::to_string(s.encoding_format())); })
      .def_property_readonly(
          "pixel_format",
          [](const ife::Slide& s) { return std::string(ife::to_string(s.pixel_format())); })
      .def_property_readonly("tile_dimension", &ife::Slide::tile_dimension)
      .def_property_readonly("total_tiles", &ife::Slide::total_tiles)
      .def_property_readonly("sparse_tiles", &ife::Slide::sparse_tiles)
      .def_property_readonly("layers",
                             [](const ife::Slide& s) {
                               py::list layers;
                               for (const auto& layer : s.layout().layers()) {
                                 layers.append(layer_dict(layer));
                               }
                               return layers;
                             })
      .def_property_readonly("attributes",
                             [](const ife::Slide& s) {
                               py::dict d;
                               for (const auto& a : s.read_attributes()) {
                                 d[py::str(a.key)] =
                                     py::bytes(a.value).attr("decode")("utf-8", "replace");
                               }
                               return d;
                             })
      .def_property_readonly("associated_image_labels",
                             [](const ife::Slide& s) {
                               std::vector<std::string> labels;
                               for (const auto& image : s.associated_images()) {
                                 labels.emplace_back(ife::to_string(image.label));
                               }
                               return labels;
                             })
      .def_property_readonly("annotation_ids",
                             [](const ife::Slide& s) {
                               std::vector<std::uint32_t> ids;
                               for (const auto& a : s.annotations()) {
                                 ids.push_back(a.identifier);
                               }
                               return ids;
                             })
      .def(
          "tile_index",
          [](const ife::Slide& s, std::uint32_t layer, std::uint32_t x, std::uint32_t y) {
            return s.layout().global_index(layer, x, y);
          },
          py::arg("layer"), py::arg("x"), py::arg("y"))
      .def("read_tile", &read_tile, py::arg("index"),
           "Decoded pixels as a (256, 256, channels) uint8 array, or None "
           "for a sparse tile.")
      .def(
          "read_tile_compressed",
          [](const ife::Slide& s, std::uint64_t index) -> py::object {
            if (index >= s.total_tiles()) {
              throw py::index_error("tile " + std::to_string(index) + " is out of range");
            }
            const auto bytes = s.read_tile_compressed(index);
            if (!bytes) return py::none();
            return py::bytes(reinterpret_cast<const char*>(bytes->data()), bytes->size());
          },
          py::arg("index"))
      .def("bench", &bench, py::arg("batch_size") = 10000, py::arg("batches") = 3,
           py::arg("seed") = 0, py::arg("path") = "decoded");

  m.def("open", [](const std::string& path) { return ife::Slide::open(path); }, py::arg("path"));
  m.def(
      "validate",
      [](const std::string& path) {
        const auto report = ife::validate(ife::FileView::open(path));
        py::dict d;
        d["ok"] = report.ok();
        d["errors"] = report.error_count();
        d["warnings"] = report.warning_count();
        d["text"] = report.to_text();
        return d;
      },
      py::arg("path"));
}
